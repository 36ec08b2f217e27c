#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace sl2c {

// Worker count: SL2C6J_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
int worker_count();

// Runs body(i) for i in [0, count). Each index writes only its own output,
// so results do not depend on scheduling. The exception raised by the lowest
// failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(std::complex<double> x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  struct Real {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
      const double t = sum + x;
      if ((sum >= 0 ? sum : -sum) >= (x >= 0 ? x : -x)) {
        comp += (sum - t) + x;
      } else {
        comp += (x - t) + sum;
      }
      sum = t;
    }
    double value() const { return sum + comp; }
  };
  Real re_;
  Real im_;
};

}  // namespace sl2c
