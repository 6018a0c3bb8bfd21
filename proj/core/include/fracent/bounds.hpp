#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fracent/distributions.hpp"
#include "fracent/entropy.hpp"

namespace fracent {

enum class Verdict { Holds, Fails, Skipped };
std::string_view verdict_name(Verdict v);

// One inequality lhs <= rhs evaluated numerically. slack = rhs - lhs; the check holds
// when slack >= -tolerance, where tolerance covers the quadrature error estimates.
struct BoundCheck {
    std::string name;
    std::string spec;
    double alpha = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    double tolerance = 0.0;
    Verdict verdict = Verdict::Skipped;
    std::string reason;  // why a check was skipped

    bool holds() const noexcept { return verdict == Verdict::Holds; }
};

// H^a <= H_S^a.
BoundCheck bound_shannon_power(const DistributionSpec& spec, Alpha alpha, const quad::QuadratureConfig& cfg = {});
// A(a) e^{H_S} <= H^a, A(a) = exp int f ln(f (-ln f)^a).
BoundCheck bound_exp_logsum(const DistributionSpec& spec, Alpha alpha, const quad::QuadratureConfig& cfg = {});
// H^a <= b^{1-a} H_S^a on a support of length b.
BoundCheck bound_jensen_support(const DistributionSpec& spec, Alpha alpha, const quad::QuadratureConfig& cfg = {});
// H^a <= int (-ln f)^a dx.
BoundCheck bound_holder(const DistributionSpec& spec, Alpha alpha, const quad::QuadratureConfig& cfg = {});

struct SandwichChecks {
    BoundCheck lower;  // int f (1 - f)^a <= H^a
    BoundCheck upper;  // H^a <= int f (1/f - 1)^a
    BoundCheck cap;    // H^a <= b (a/e)^a
};
SandwichChecks bound_sandwich(const DistributionSpec& spec, Alpha alpha, const quad::QuadratureConfig& cfg = {});

// H^a(f_X f_Y) <= H^a(f_X) + H^a(f_Y) for independent X, Y.
BoundCheck bound_subadditive(const DistributionSpec& x, const DistributionSpec& y, Alpha alpha,
                             const quad::QuadratureConfig& cfg = {});

struct SuiteOptions {
    std::uint64_t seed = 20240917;
    int draws = 200;
    std::vector<Family> families;  // empty: every family
};

struct SuiteReport {
    std::vector<BoundCheck> checks;

    int count(Verdict v) const;
    double skipped_fraction() const;
    bool passed() const { return count(Verdict::Fails) == 0; }
};

// A random admissible spec of the given family (inadmissible only where the family
// has no admissible member, e.g. triangular).
DistributionSpec random_spec(Family family, std::mt19937_64& rng);

// Runs all six bound operations on `draws` seeded random specs.
SuiteReport run_bound_suite(const SuiteOptions& opt, const quad::QuadratureConfig& cfg = {});

}  // namespace fracent
