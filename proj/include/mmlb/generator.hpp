#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace mmlb {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Convex function f on [0, inf) with f(1) = 0, defining D_f(P||Q) = sum q f(p/q).
///
/// Built-in kinds carry closed-form perspective functions q f(p/q) so that
/// divergence sums avoid forming large ratios. Custom generators are accepted
/// after a midpoint-convexity check on a grid in [0, 16].
class Generator {
public:
    enum class Kind { kl, chi2, hellinger_half, hellinger_sq, tv, power, reverse_kl, custom };

    using Fn = std::function<double(double)>;

    static Generator kl();
    static Generator chi2();
    static Generator hellinger_half();
    static Generator hellinger_sq();
    static Generator tv();
    /// x^l - 1 for l > 1.
    static Generator power(double l);
    static Generator reverse_kl();
    /// Throws std::invalid_argument when f(1) != 0 or the convexity check fails.
    static Generator custom(std::string name, Fn f, double f_at_zero,
                            std::optional<Fn> derivative = std::nullopt, bool strictly_convex = true);

    /// Parses kl | chi2 | hellinger_half | hellinger_sq | tv | power:l | reverse_kl.
    static Generator from_name(const std::string& name);

    const std::string& name() const noexcept { return name_; }
    Kind kind() const noexcept { return kind_; }
    /// Exponent of the power family; 0 for other kinds.
    double exponent() const noexcept { return exponent_; }
    double f_at_zero() const noexcept { return f_at_zero_; }
    bool strictly_convex() const noexcept { return strict_; }
    bool has_derivative() const noexcept { return static_cast<bool>(derivative_); }

    /// f(x); returns f_at_zero() at x = 0.
    double operator()(double x) const;
    /// f'(x). Throws std::logic_error when the generator has no derivative.
    double derivative(double x) const;
    /// q f(p/q) for p >= 0, q > 0.
    double perspective(double p, double q) const;

private:
    Generator(std::string name, Kind kind, Fn f, double f0, std::optional<Fn> derivative, bool strict,
              double exponent = 0.0);

    std::string name_;
    Kind kind_;
    Fn f_;
    double f_at_zero_;
    std::optional<Fn> derivative_;
    bool strict_;
    double exponent_;
};

/// Grid midpoint-convexity check used for custom generators. Returns the
/// first violating pair, if any.
std::optional<std::pair<double, double>> find_convexity_violation(const Generator::Fn& f, double f_at_zero);

/// The seven built-in generators, with the power family at exponent `power_l`.
std::vector<Generator> builtin_generators(double power_l = 3.0);

}  // namespace mmlb
