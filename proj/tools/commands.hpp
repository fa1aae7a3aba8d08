#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage (including a
// size gate hit without --force), 2 invalid modulus, 3 walk did not mix,
// 4 a checked invariant failed.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "circlewalk/modular.hpp"

namespace circlewalk::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kBadModulus = 2, kNotMixed = 3, kInvariant = 4 };

struct ScanRow {
    std::uint32_t p = 0;
    std::uint64_t tau_measured = 0;  // exact when mixing_exact, else the spectral TV bound
    std::uint64_t coupling_tau = 0;
    double gap = 0.0;
    double alpha_star = 0.0;
    double tau_over_p = 0.0;
    double tau_over_log_p = 0.0;
    bool mixing_exact = true;
};

ScanRow scan_row(const PrimeModulus& m, double epsilon, bool force);

/// Smallest t with (1/2) pi_*^{-1/2} alpha_*^t <= epsilon.
std::uint64_t spectral_mixing_bound(double alpha_star, double pi_min, double epsilon);

/// %.17g
std::string format_double(double v);

/// Job count: CIRCLEWALK_JOBS if set to a positive integer, else all cores.
unsigned default_jobs();

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace circlewalk::cli
