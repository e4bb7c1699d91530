#pragma once

#include "bohr/extremal.hpp"
#include "bohr/phi_catalog.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bohr {

enum class ClassKind { Starlike, Convex, BoundaryStarlike };

std::string_view to_string(ClassKind kind);
// Accepts starlike, convex, boundary_starlike and its alias galpha.
std::optional<ClassKind> class_from_name(std::string_view name);

inline constexpr double kBohrCap = 1.0 / 3.0;
inline constexpr double kMinTolerance = 1e-14;
inline constexpr double kMaxTolerance = 1e-6;

struct BohrResult {
    double radius;              // min(root, 1/3)
    std::optional<double> root; // uncapped root, when located
    bool capped;
    double residual;            // |H(root)|
    std::pair<double, double> bracket;
    int order_used;
    ClassKind class_kind;
};

// H(r) = h(r) + h(-1) and H_1(r) = k(r) + k(-1).
double starlike_H(const ExtremalPair& pair, double r);
double convex_H(const ExtremalPair& pair, double r);

// Smallest positive root of h(r) + h(-1), reported as min(root, 1/3).
// tol is the final bracket width and must lie in [1e-14, 1e-6].
BohrResult starlike_bohr_radius(const PhiSpec& spec, double tol = 1e-12,
                                int order = kDefaultOrder);

// Same with k in place of h.
BohrResult convex_bohr_radius(const PhiSpec& spec, double tol = 1e-12, int order = kDefaultOrder);

// (2^{1/(2(1-alpha))} - 1) / (2^{1/(2(1-alpha))} + 1) for 0 <= alpha < 1.
double galpha_bohr_radius(double alpha);
BohrResult galpha_result(double alpha);

using SpecFamily = std::function<PhiSpec(double)>;

struct ThresholdResult {
    double parameter;
    std::pair<double, double> bracket;
    bool increasing; // sign of dH(1/3)/dparameter
    std::vector<std::pair<double, double>> samples; // (parameter, H(1/3))
};

// H(1/3) for the class (starlike: h, convex: k).
double one_third_margin(const PhiSpec& spec, ClassKind kind = ClassKind::Starlike);

// Parameter in [lo, hi] where H(1/3) changes sign, i.e. where the uncapped
// root crosses 1/3. H(1/3) is sampled on `samples` equispaced points first:
// constant sign raises NoSignChange, a non-monotone sample sequence raises
// NonMonotone with the sampled signs in the message.
ThresholdResult threshold_scan(const SpecFamily& family, double lo, double hi, double tol,
                               ClassKind kind = ClassKind::Starlike, int samples = 17);

// Threshold families used by the table and the CLI scan command.
SpecFamily exponential_family();
SpecFamily lens_family();
SpecFamily booth_family();
// Janowski kernels with A fixed, scanned over B.
SpecFamily janowski_family_b(double a);

// The Janowski threshold B* for fixed A satisfies
//   3(1 - B) / (3 + B) = 3^k
// for one of the two exponents k = B/(B - A) or k = (B - A)/B. The report
// evaluates both relations at the scanned B* and, separately, the printed
// closed form B = (1 - 3^k)/(1 + 3^k) under both readings.
struct ExponentConventionReport {
    double a;
    double b_star;
    double tol;
    double relation_residual_b_over_b_minus_a;
    double relation_residual_b_minus_a_over_b;
    std::optional<double> printed_root_b_over_b_minus_a;
    std::optional<double> printed_root_b_minus_a_over_b;
    std::string convention; // "B/(B-A)" or "(B-A)/B"
};

ExponentConventionReport janowski_exponent_convention(double a, double tol = 1e-12);

} // namespace bohr
