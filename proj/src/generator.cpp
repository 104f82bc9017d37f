#include "mmlb/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mmlb {

Generator::Generator(std::string name, Kind kind, Fn f, double f0, std::optional<Fn> derivative,
                     bool strict, double exponent)
    : name_(std::move(name)),
      kind_(kind),
      f_(std::move(f)),
      f_at_zero_(f0),
      derivative_(std::move(derivative)),
      strict_(strict),
      exponent_(exponent) {}

Generator Generator::kl() {
    return Generator(
        "kl", Kind::kl, [](double x) { return x * std::log(x); }, 0.0,
        Fn([](double x) { return x > 0.0 ? std::log(x) + 1.0 : -kInf; }), true);
}

Generator Generator::chi2() {
    return Generator(
        "chi2", Kind::chi2, [](double x) { return x * x - 1.0; }, -1.0, Fn([](double x) { return 2.0 * x; }),
        true);
}

Generator Generator::hellinger_half() {
    return Generator(
        "hellinger_half", Kind::hellinger_half, [](double x) { return 1.0 - std::sqrt(x); }, 1.0,
        Fn([](double x) { return x > 0.0 ? -0.5 / std::sqrt(x) : -kInf; }), true);
}

Generator Generator::hellinger_sq() {
    return Generator(
        "hellinger_sq", Kind::hellinger_sq,
        [](double x) {
            const double r = std::sqrt(x) - 1.0;
            return r * r;
        },
        1.0, Fn([](double x) { return x > 0.0 ? 1.0 - 1.0 / std::sqrt(x) : -kInf; }), true);
}

Generator Generator::tv() {
    return Generator("tv", Kind::tv, [](double x) { return 0.5 * std::abs(x - 1.0); }, 0.5, std::nullopt, false);
}

Generator Generator::power(double l) {
    if (!(l > 1.0) || !std::isfinite(l))
        throw std::invalid_argument("power generator: exponent must be a finite number > 1");
    std::string name = "power:";
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", l);
        name += buf;
    }
    return Generator(
        std::move(name), Kind::power, [l](double x) { return std::pow(x, l) - 1.0; }, -1.0,
        Fn([l](double x) { return l * std::pow(x, l - 1.0); }), true, l);
}

Generator Generator::reverse_kl() {
    return Generator(
        "reverse_kl", Kind::reverse_kl, [](double x) { return -std::log(x); }, kInf,
        Fn([](double x) { return x > 0.0 ? -1.0 / x : -kInf; }), true);
}

Generator Generator::custom(std::string name, Fn f, double f_at_zero, std::optional<Fn> derivative,
                            bool strictly_convex) {
    if (!f) throw std::invalid_argument("custom generator: f is empty");
    const double at_one = f(1.0);
    if (at_one != 0.0)
        throw std::invalid_argument("custom generator '" + name + "': f(1) = " + std::to_string(at_one) +
                                    ", expected 0");
    if (auto bad = find_convexity_violation(f, f_at_zero))
        throw std::invalid_argument("custom generator '" + name + "': midpoint convexity fails at x=" +
                                    std::to_string(bad->first) + ", y=" + std::to_string(bad->second));
    return Generator(std::move(name), Kind::custom, std::move(f), f_at_zero, std::move(derivative),
                     strictly_convex);
}

Generator Generator::from_name(const std::string& name) {
    if (name == "kl") return kl();
    if (name == "chi2") return chi2();
    if (name == "hellinger_half") return hellinger_half();
    if (name == "hellinger_sq") return hellinger_sq();
    if (name == "tv") return tv();
    if (name == "reverse_kl") return reverse_kl();
    if (name.rfind("power:", 0) == 0) {
        const std::string tail = name.substr(6);
        std::size_t used = 0;
        double l = 0.0;
        try {
            l = std::stod(tail, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != tail.size())
            throw std::invalid_argument("generator '" + name + "': malformed exponent");
        return power(l);
    }
    throw std::invalid_argument("unknown generator '" + name +
                                "' (expected kl, chi2, hellinger_half, hellinger_sq, tv, power:l, reverse_kl)");
}

double Generator::operator()(double x) const {
    if (x == 0.0) return f_at_zero_;
    return f_(x);
}

double Generator::derivative(double x) const {
    if (!derivative_) throw std::logic_error("generator '" + name_ + "' has no derivative");
    return (*derivative_)(x);
}

double Generator::perspective(double p, double q) const {
    switch (kind_) {
        case Kind::kl:
            return p > 0.0 ? p * std::log(p / q) : 0.0;
        case Kind::chi2:
            return p * p / q - q;
        case Kind::hellinger_half:
            return q - std::sqrt(p * q);
        case Kind::hellinger_sq: {
            const double d = std::sqrt(p) - std::sqrt(q);
            return d * d;
        }
        case Kind::tv:
            return 0.5 * std::abs(p - q);
        case Kind::power:
            return q * (std::pow(p / q, exponent_) - 1.0);
        case Kind::reverse_kl:
            return p > 0.0 ? q * std::log(q / p) : kInf;
        case Kind::custom:
            break;
    }
    return q * (*this)(p / q);
}

std::optional<std::pair<double, double>> find_convexity_violation(const Generator::Fn& f, double f_at_zero) {
    constexpr int kSteps = 64;
    constexpr double kUpper = 16.0;
    auto eval = [&](double x) { return x == 0.0 ? f_at_zero : f(x); };
    std::vector<double> grid(kSteps + 1);
    std::vector<double> values(kSteps + 1);
    for (int i = 0; i <= kSteps; ++i) {
        grid[i] = kUpper * i / kSteps;
        values[i] = eval(grid[i]);
    }
    for (int i = 0; i <= kSteps; ++i) {
        for (int j = i + 2; j <= kSteps; j += 2) {
            if (std::isinf(values[i]) || std::isinf(values[j])) continue;
            const double mid = values[(i + j) / 2];
            const double chord = 0.5 * (values[i] + values[j]);
            const double slack = 1e-12 * std::max(1.0, std::abs(values[i]) + std::abs(values[j]));
            if (!(mid <= chord + slack)) return std::make_pair(grid[i], grid[j]);
        }
    }
    return std::nullopt;
}

std::vector<Generator> builtin_generators(double power_l) {
    return {Generator::kl(),  Generator::chi2(),         Generator::hellinger_half(), Generator::hellinger_sq(),
            Generator::tv(),  Generator::power(power_l), Generator::reverse_kl()};
}

}  // namespace mmlb
