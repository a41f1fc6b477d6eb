#include "hollm/benchmarks.hpp"

#include <cmath>
#include <stdexcept>

namespace hollm {

namespace {

constexpr double kHartmannAlpha[4] = {1.0, 1.2, 3.0, 3.2};

constexpr double kH3A[4][3] = {
    {3.0, 10.0, 30.0},
    {0.1, 10.0, 35.0},
    {3.0, 10.0, 30.0},
    {0.1, 10.0, 35.0},
};
constexpr double kH3P[4][3] = {
    {0.3689, 0.1170, 0.2673},
    {0.4699, 0.4387, 0.7470},
    {0.1091, 0.8732, 0.5547},
    {0.0381, 0.5743, 0.8828},
};

constexpr double kH6A[4][6] = {
    {10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
    {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
    {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
    {17.0, 8.0, 0.05, 10.0, 0.1, 14.0},
};
constexpr double kH6P[4][6] = {
    {0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
    {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
    {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
    {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381},
};

template <int D, typename AT, typename PT>
double hartmann(std::span<const double> x, const AT& A, const PT& P) {
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        double inner = 0.0;
        for (int j = 0; j < D; ++j) {
            double dx = x[j] - P[i][j];
            inner += A[i][j] * dx * dx;
        }
        sum += kHartmannAlpha[i] * std::exp(-inner);
    }
    return -sum;
}

void require_dims(std::span<const double> x, int d, const char* name) {
    if (static_cast<int>(x.size()) != d)
        throw std::domain_error(std::string(name) + ": wrong dimensionality");
}

double multimodal1d(std::span<const double> x) {
    // demo function for 1-D visual traces; no optimum claim attached
    double v = x[0];
    return -(std::sin(3.0 * v) * std::exp(-0.1 * v * v) + 0.5 * std::sin(7.0 * v));
}

class BenchmarkObjective final : public ObjectiveFunction {
public:
    BenchmarkObjective(const BenchmarkDef& def, int d)
        : def_(def),
          space_(std::vector<double>(static_cast<std::size_t>(d), def.domain_lo),
                 std::vector<double>(static_cast<std::size_t>(d), def.domain_hi)) {}

    double evaluate(std::span<const double> x) override {
        if (!space_.contains(x))
            throw std::domain_error(def_.name + ": point outside domain");
        return -def_.raw_eval(x);  // internal maximization
    }

    const SearchSpace& space() const override { return space_; }

    std::optional<double> known_optimum() const override {
        if (!def_.known_min) return std::nullopt;
        return -*def_.known_min;
    }

    double raw_value(double internal) const override { return -internal; }

    std::string name() const override {
        return def_.name + ":d=" + std::to_string(space_.dims());
    }

private:
    const BenchmarkDef& def_;
    SearchSpace space_;
};

} // namespace

double hartmann3(std::span<const double> x) {
    require_dims(x, 3, "hartmann3");
    return hartmann<3>(x, kH3A, kH3P);
}

double hartmann6(std::span<const double> x) {
    require_dims(x, 6, "hartmann6");
    return hartmann<6>(x, kH6A, kH6P);
}

double rosenbrock(std::span<const double> x) {
    if (x.size() < 2) throw std::domain_error("rosenbrock: needs d >= 2");
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        double a = x[i + 1] - x[i] * x[i];
        double b = 1.0 - x[i];
        sum += 100.0 * a * a + b * b;
    }
    return sum;
}

double rastrigin(std::span<const double> x) {
    double sum = 10.0 * static_cast<double>(x.size());
    for (double v : x) sum += v * v - 10.0 * std::cos(2.0 * M_PI * v);
    return sum;
}

double levy(std::span<const double> x) {
    const std::size_t d = x.size();
    auto w = [&](std::size_t i) { return 1.0 + (x[i] - 1.0) / 4.0; };
    double s1 = std::sin(M_PI * w(0));
    double sum = s1 * s1;
    for (std::size_t i = 0; i + 1 < d; ++i) {
        double wi = w(i);
        double s = std::sin(M_PI * wi + 1.0);
        sum += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * s * s);
    }
    double wd = w(d - 1);
    double s2 = std::sin(2.0 * M_PI * wd);
    sum += (wd - 1.0) * (wd - 1.0) * (1.0 + s2 * s2);
    return sum;
}

double ackley(std::span<const double> x) {
    const double d = static_cast<double>(x.size());
    double sq = 0.0, cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * M_PI * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / d)) - std::exp(cs / d) + 20.0 + M_E;
}

const std::vector<BenchmarkDef>& benchmark_registry() {
    static const std::vector<BenchmarkDef> registry = [] {
        std::vector<BenchmarkDef> defs;
        defs.push_back({"hartmann3", 3, true, 0.0, 1.0, hartmann3, -3.86278,
                        [](int) { return Point{0.114614, 0.555649, 0.852547}; }});
        defs.push_back({"hartmann6", 6, true, 0.0, 1.0, hartmann6, -3.32237,
                        [](int) {
                            return Point{0.20169, 0.150011, 0.476874,
                                         0.275332, 0.311652, 0.6573};
                        }});
        defs.push_back({"rosenbrock", 8, false, -2.048, 2.048, rosenbrock, 0.0,
                        [](int d) { return Point(static_cast<std::size_t>(d), 1.0); }});
        defs.push_back({"rastrigin", 10, false, -5.12, 5.12, rastrigin, 0.0,
                        [](int d) { return Point(static_cast<std::size_t>(d), 0.0); }});
        defs.push_back({"levy", 10, false, -10.0, 10.0, levy, 0.0,
                        [](int d) { return Point(static_cast<std::size_t>(d), 1.0); }});
        defs.push_back({"ackley", 20, false, -32.768, 32.768, ackley, 0.0,
                        [](int d) { return Point(static_cast<std::size_t>(d), 0.0); }});
        defs.push_back({"multimodal1d", 1, true, -3.0, 3.0, multimodal1d,
                        std::nullopt, nullptr});
        return defs;
    }();
    return registry;
}

const BenchmarkDef& benchmark_by_name(const std::string& name) {
    for (const auto& def : benchmark_registry())
        if (def.name == name) return def;
    throw std::invalid_argument("unknown benchmark: " + name);
}

std::unique_ptr<ObjectiveFunction> make_objective(const std::string& spec) {
    std::string name = spec;
    int d = -1;
    if (auto pos = spec.find(':'); pos != std::string::npos) {
        name = spec.substr(0, pos);
        std::string arg = spec.substr(pos + 1);
        if (arg.rfind("d=", 0) != 0)
            throw std::invalid_argument("bad benchmark spec: " + spec);
        d = std::stoi(arg.substr(2));
    }
    const BenchmarkDef& def = benchmark_by_name(name);
    if (d < 0) d = def.default_d;
    if (def.fixed_d && d != def.default_d)
        throw std::invalid_argument(name + " has fixed dimensionality " +
                                    std::to_string(def.default_d));
    if (d < 1) throw std::invalid_argument("dimensionality must be >= 1");
    if (name == "rosenbrock" && d < 2)
        throw std::invalid_argument("rosenbrock needs d >= 2");
    return std::make_unique<BenchmarkObjective>(def, d);
}

} // namespace hollm
