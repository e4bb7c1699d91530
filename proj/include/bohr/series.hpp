#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace bohr {

// Truncated real power series c_0 + c_1 z + ... + c_N z^N.
//
// Every stored coefficient is finite. Binary operations between series of
// orders N1 and N2 produce order min(N1, N2), which is the degree up to which
// the result is exact.
class TruncatedSeries {
  public:
    TruncatedSeries() : coeffs_{0.0} {}
    explicit TruncatedSeries(std::vector<double> coeffs);
    TruncatedSeries(std::initializer_list<double> coeffs)
        : TruncatedSeries(std::vector<double>(coeffs)) {}

    static TruncatedSeries zero(int order);
    static TruncatedSeries constant(double c, int order);
    // c * z^power, truncated at `order`.
    static TruncatedSeries monomial(double c, int power, int order);

    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    double operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }
    std::span<const double> coeffs() const noexcept { return coeffs_; }

    TruncatedSeries truncated(int order) const;

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

  private:
    std::vector<double> coeffs_;
};

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(double s, const TruncatedSeries& a);

TruncatedSeries cauchy_mul(const TruncatedSeries& a, const TruncatedSeries& b);

// exp(a) for a with a_0 == 0 exactly, via e_n = (1/n) sum_j j a_j e_{n-j}.
TruncatedSeries series_exp(const TruncatedSeries& a);

// log(a) for a with a_0 == 1 exactly; the result has zero constant term.
TruncatedSeries series_log(const TruncatedSeries& a);

// Maps sum_{n>=1} b_n t^n to sum_{n>=1} b_n z^n / n, i.e. integral_0^z b(t)/t dt.
TruncatedSeries integrate_term_over_t(const TruncatedSeries& b);

// Coefficient-wise absolute value.
TruncatedSeries majorant(const TruncatedSeries& a);

// Horner evaluation at x in [-1, 1]. When tail_bound is given the caller
// asserts that the discarded tail is below it; the truncation itself is
// evaluated exactly.
double eval(const TruncatedSeries& a, double x, std::optional<double> tail_bound = std::nullopt);

std::complex<double> eval_complex(const TruncatedSeries& a, std::complex<double> z);

// Term-wise derivative; order drops by one (minimum 0).
TruncatedSeries derivative(const TruncatedSeries& a);

// z * a, order N + 1.
TruncatedSeries shift_up(const TruncatedSeries& a);

// a / z for a with a_0 == 0, order N - 1.
TruncatedSeries shift_down(const TruncatedSeries& a);

// outer(inner(z)) for inner with inner_0 == 0; exact to min(N_outer, N_inner).
TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner);

// Geometric tail estimate max(|c_{N-1}| |x|^{N-1}, |c_N| |x|^N) / (1 - |x|).
// Using the last two coefficients keeps parity-sparse series honest.
double geometric_tail_estimate(const TruncatedSeries& a, double x);

struct AdaptiveEval {
    double value;
    int order;
    double tail;
};

inline constexpr int kDefaultOrder = 64;
inline constexpr int kMaxOrder = 1024;
inline constexpr double kTailTolerance = 1e-13;

// Evaluates generator(order) at x, doubling the order from start_order up to
// max_order until geometric_tail_estimate < tail_tol. Throws SlowConvergence.
AdaptiveEval eval_adaptive(const std::function<TruncatedSeries(int)>& generator, double x,
                           int start_order = kDefaultOrder, int max_order = kMaxOrder,
                           double tail_tol = kTailTolerance);

} // namespace bohr
