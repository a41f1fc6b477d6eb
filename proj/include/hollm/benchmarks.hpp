#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hollm/core.hpp"

namespace hollm {

/// Analytic test objective in its native minimization convention.
struct BenchmarkDef {
    std::string name;
    int default_d = 1;
    bool fixed_d = true;
    double domain_lo = 0.0;
    double domain_hi = 1.0;
    std::function<double(std::span<const double>)> raw_eval;  // minimization
    std::optional<double> known_min;
    std::function<Point(int d)> known_minimizer;  // nullptr when unknown
};

double hartmann3(std::span<const double> x);
double hartmann6(std::span<const double> x);
double rosenbrock(std::span<const double> x);
double rastrigin(std::span<const double> x);
double levy(std::span<const double> x);
double ackley(std::span<const double> x);

const std::vector<BenchmarkDef>& benchmark_registry();
const BenchmarkDef& benchmark_by_name(const std::string& name);

/// Builds the maximization-convention objective for a spec string such as
/// "hartmann3" or "levy:d=10". Minimization benchmarks are negated at
/// registration; raw_value() undoes the negation for logging.
std::unique_ptr<ObjectiveFunction> make_objective(const std::string& spec);

} // namespace hollm
