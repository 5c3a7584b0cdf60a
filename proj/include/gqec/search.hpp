#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gqec/entanglement.hpp"
#include "gqec/gecc.hpp"

namespace gqec {

inline constexpr Real kSearchSqueezeBound = 3.0;
inline constexpr Real kViolationTol = 1e-6;
inline constexpr int kMaxSearchModes = 4;

/// Bloch-Messiah parameter set for each code symplectic: two passive factors
/// of n(n-1)/2 beam-splitter angles plus n phases each, and n squeezing values
/// bounded by r_max. Layout per symplectic:
///   [angles1 | phases1 | squeezings | angles2 | phases2].
struct CodeParameterization {
  int n = 1;
  Vector encoder_params;
  Vector decoder_params;
};

/// n^2 + 2n parameters per symplectic.
int symplectic_param_count(int n_modes);

CodeParameterization zero_parameterization(int n_modes);

/// Deterministic construction of the code symplectics from parameters.
GECCode realize(const CodeParameterization& params, Real r_max = kSearchSqueezeBound);

/// degradation_of_code(realize(params), channel).
Real objective(const CodeParameterization& params, const GaussianChannel& channel);

enum class SearchMethod { random, nelder_mead_multistart };
SearchMethod search_method_from_string(const std::string& name);
std::string to_string(SearchMethod method);

struct SearchOptions {
  Real r_max = kSearchSqueezeBound;
  Real violation_tol = kViolationTol;
  int n_max = kMaxSearchModes;
  int refine_starts = 5;  // simplex refinement on this many best starts
  int streams = 16;       // deterministic concurrent sampling streams
};

struct SearchResult {
  CodeParameterization best_params;
  Real best_D = 1;
  Real baseline_D = 1;
  long evaluations = 0;
  long skipped = 0;  // numerical failures, counted and excluded from best
  std::uint64_t seed = 0;
  bool violated = false;
  Real best_det_M_GC = 1;
  Real best_det_N_GC = 0;
};

/// Attempt to falsify the no-go inequality: minimize D[T_GC] over codes and
/// compare against the closed-form baseline D[T]. Deterministic given
/// (channel, n, budget, seed, method): every sampling stream owns an RNG
/// derived from (seed, stream index) and the reduction is a stable min.
/// The zero parameterization (the trivial code) is always evaluated first.
SearchResult search(const GaussianChannel& channel, int n_modes, long budget, std::uint64_t seed,
                    SearchMethod method, const SearchOptions& options = {});

enum class ChannelFamily { attenuation, amplification, classical_noise };
ChannelFamily channel_family_from_string(const std::string& name);
std::string to_string(ChannelFamily family);

/// Family member for one grid value. For classical_noise the parameter is
/// det N and the channel carries N = sqrt(det N) * I.
GaussianChannel family_channel(ChannelFamily family, Real param);

struct SweepRow {
  std::string family;
  Real param = 0;
  Real closed_form_D = 0;
  Real finite_r_D = 0;  // min(nu_-^2 at r = 8, 1)
  Real search_best_D = 0;
  bool violated = false;
  std::string note;  // empty when the row evaluated cleanly
};

std::vector<SweepRow> sweep_report(ChannelFamily family, const std::vector<Real>& grid,
                                   int n_modes, long budget, std::uint64_t seed,
                                   SearchMethod method = SearchMethod::nelder_mead_multistart,
                                   const SearchOptions& options = {});

}  // namespace gqec
