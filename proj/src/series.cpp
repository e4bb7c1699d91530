#include "bohr/series.hpp"

#include "bohr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bohr {

namespace {

std::size_t idx(int n) { return static_cast<std::size_t>(n); }

int common_order(const TruncatedSeries& a, const TruncatedSeries& b) {
    return std::min(a.order(), b.order());
}

} // namespace

TruncatedSeries::TruncatedSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
        throw Error(ErrorKind::InvalidSeries, "a series needs at least the constant coefficient");
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        if (!std::isfinite(coeffs_[n]))
            throw Error(ErrorKind::InvalidSeries,
                        "coefficient " + std::to_string(n) + " is not finite");
    }
}

TruncatedSeries TruncatedSeries::zero(int order) {
    return TruncatedSeries(std::vector<double>(idx(std::max(order, 0)) + 1, 0.0));
}

TruncatedSeries TruncatedSeries::constant(double c, int order) {
    std::vector<double> v(idx(std::max(order, 0)) + 1, 0.0);
    v[0] = c;
    return TruncatedSeries(std::move(v));
}

TruncatedSeries TruncatedSeries::monomial(double c, int power, int order) {
    std::vector<double> v(idx(std::max(order, 0)) + 1, 0.0);
    if (power >= 0 && power <= order)
        v[idx(power)] = c;
    return TruncatedSeries(std::move(v));
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
    order = std::clamp(order, 0, this->order());
    return TruncatedSeries(std::vector<double>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int n = common_order(a, b);
    std::vector<double> c(idx(n) + 1);
    for (int i = 0; i <= n; ++i)
        c[idx(i)] = a[i] + b[i];
    return TruncatedSeries(std::move(c));
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int n = common_order(a, b);
    std::vector<double> c(idx(n) + 1);
    for (int i = 0; i <= n; ++i)
        c[idx(i)] = a[i] - b[i];
    return TruncatedSeries(std::move(c));
}

TruncatedSeries operator*(double s, const TruncatedSeries& a) {
    std::vector<double> c(a.coeffs().begin(), a.coeffs().end());
    for (auto& x : c)
        x *= s;
    return TruncatedSeries(std::move(c));
}

TruncatedSeries cauchy_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int n = common_order(a, b);
    std::vector<double> c(idx(n) + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        const double ai = a[i];
        if (ai == 0.0)
            continue;
        for (int j = 0; i + j <= n; ++j)
            c[idx(i + j)] += ai * b[j];
    }
    return TruncatedSeries(std::move(c));
}

TruncatedSeries series_exp(const TruncatedSeries& a) {
    if (a[0] != 0.0)
        throw Error(ErrorKind::NonzeroConstantTerm,
                    "series_exp needs a_0 = 0, got " + std::to_string(a[0]));
    const int n = a.order();
    std::vector<double> e(idx(n) + 1, 0.0);
    e[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j)
            acc += j * a[j] * e[idx(k - j)];
        e[idx(k)] = acc / k;
    }
    return TruncatedSeries(std::move(e));
}

TruncatedSeries series_log(const TruncatedSeries& a) {
    if (a[0] != 1.0)
        throw Error(ErrorKind::NonunitConstantTerm,
                    "series_log needs a_0 = 1, got " + std::to_string(a[0]));
    const int n = a.order();
    std::vector<double> l(idx(n) + 1, 0.0);
    for (int k = 1; k <= n; ++k) {
        double acc = 0.0;
        for (int j = 1; j < k; ++j)
            acc += j * l[idx(j)] * a[k - j];
        l[idx(k)] = a[k] - acc / k;
    }
    return TruncatedSeries(std::move(l));
}

TruncatedSeries integrate_term_over_t(const TruncatedSeries& b) {
    if (b[0] != 0.0)
        throw Error(ErrorKind::NonzeroConstantTerm,
                    "integrand b(t)/t needs b_0 = 0, got " + std::to_string(b[0]));
    std::vector<double> c(idx(b.order()) + 1, 0.0);
    for (int n = 1; n <= b.order(); ++n)
        c[idx(n)] = b[n] / n;
    return TruncatedSeries(std::move(c));
}

TruncatedSeries majorant(const TruncatedSeries& a) {
    std::vector<double> c(a.coeffs().begin(), a.coeffs().end());
    for (auto& x : c)
        x = std::abs(x);
    return TruncatedSeries(std::move(c));
}

double eval(const TruncatedSeries& a, double x, std::optional<double> tail_bound) {
    if (!(std::abs(x) <= 1.0))
        throw Error(ErrorKind::DomainError, "series evaluation needs |x| <= 1, got " +
                                                std::to_string(x));
    if (tail_bound && geometric_tail_estimate(a, x) > *tail_bound)
        throw Error(ErrorKind::TailTooLarge, "tail estimate exceeds the asserted bound");
    double acc = 0.0;
    for (int n = a.order(); n >= 0; --n)
        acc = acc * x + a[n];
    return acc;
}

std::complex<double> eval_complex(const TruncatedSeries& a, std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (int n = a.order(); n >= 0; --n)
        acc = acc * z + a[n];
    return acc;
}

TruncatedSeries derivative(const TruncatedSeries& a) {
    if (a.order() == 0)
        return TruncatedSeries::zero(0);
    std::vector<double> c(idx(a.order()));
    for (int n = 1; n <= a.order(); ++n)
        c[idx(n - 1)] = n * a[n];
    return TruncatedSeries(std::move(c));
}

TruncatedSeries shift_up(const TruncatedSeries& a) {
    std::vector<double> c(idx(a.order()) + 2, 0.0);
    for (int n = 0; n <= a.order(); ++n)
        c[idx(n + 1)] = a[n];
    return TruncatedSeries(std::move(c));
}

TruncatedSeries shift_down(const TruncatedSeries& a) {
    if (a[0] != 0.0)
        throw Error(ErrorKind::NonzeroConstantTerm, "cannot divide by z when a_0 != 0");
    if (a.order() == 0)
        return TruncatedSeries::zero(0);
    return TruncatedSeries(std::vector<double>(a.coeffs().begin() + 1, a.coeffs().end()));
}

TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
    if (inner[0] != 0.0)
        throw Error(ErrorKind::NonzeroConstantTerm, "composition needs inner(0) = 0");
    const int n = common_order(outer, inner);
    const TruncatedSeries in = inner.truncated(n);
    TruncatedSeries acc = TruncatedSeries::constant(outer[n], n);
    for (int k = n - 1; k >= 0; --k)
        acc = cauchy_mul(in, acc) + TruncatedSeries::constant(outer[k], n);
    return acc;
}

double geometric_tail_estimate(const TruncatedSeries& a, double x) {
    const double ax = std::abs(x);
    if (ax >= 1.0)
        return std::numeric_limits<double>::infinity();
    if (ax == 0.0)
        return 0.0;
    const int n = a.order();
    double last = std::abs(a[n]) * std::pow(ax, n);
    if (n >= 1)
        last = std::max(last, std::abs(a[n - 1]) * std::pow(ax, n - 1));
    return last / (1.0 - ax);
}

AdaptiveEval eval_adaptive(const std::function<TruncatedSeries(int)>& generator, double x,
                           int start_order, int max_order, double tail_tol) {
    double tail = 0.0;
    for (int order = start_order; order <= max_order; order *= 2) {
        const TruncatedSeries s = generator(order);
        tail = geometric_tail_estimate(s, x);
        if (tail < tail_tol)
            return {eval(s, x), order, tail};
        if (order == max_order)
            break;
        if (order * 2 > max_order)
            order = max_order / 2;
    }
    throw Error(ErrorKind::SlowConvergence,
                "series tail " + std::to_string(tail) + " at x = " + std::to_string(x) +
                    " not below " + std::to_string(tail_tol) + " by order " +
                    std::to_string(max_order));
}

} // namespace bohr
