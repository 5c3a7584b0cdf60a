#include "gqec/search.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>
#include <stdexcept>

namespace gqec {

namespace {

constexpr Real kPi = 3.14159265358979323846;

// splitmix64 step; derives independent per-stream seeds from (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int pair_count(int n) { return n * (n - 1) / 2; }

// One passive factor: a beam-splitter network (Givens rotations over all mode
// pairs) followed by per-mode phase shifters.
Matrix passive_factor(int n, const Eigen::Ref<const Vector>& angles,
                      const Eigen::Ref<const Vector>& phases) {
  Matrix mode_map = Matrix::Identity(n, n);
  int a = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++a) {
      const Real c = std::cos(angles(a));
      const Real s = std::sin(angles(a));
      Matrix givens = Matrix::Identity(n, n);
      givens(i, i) = c;
      givens(i, j) = s;
      givens(j, i) = -s;
      givens(j, j) = c;
      mode_map = givens * mode_map;
    }
  }
  return embed_mode_map(mode_map) * phase_layer(phases);
}

SymplecticMatrix symplectic_from_params(int n, const Vector& params, Real r_max) {
  const int nb = pair_count(n);
  if (params.size() != symplectic_param_count(n)) {
    throw std::invalid_argument("code parameterization has the wrong length");
  }
  if (!params.allFinite()) {
    throw std::invalid_argument("code parameterization has non-finite entries");
  }
  const auto angles1 = params.segment(0, nb);
  const auto phases1 = params.segment(nb, n);
  const auto squeezes = params.segment(nb + n, n);
  const auto angles2 = params.segment(nb + 2 * n, nb);
  const auto phases2 = params.segment(2 * nb + 2 * n, n);
  if (squeezes.cwiseAbs().maxCoeff() > r_max) {
    throw std::out_of_range("code parameterization: squeezing exceeds the bound");
  }
  Matrix s = passive_factor(n, angles1, phases1) * squeeze_layer(squeezes) *
             passive_factor(n, angles2, phases2);
  return SymplecticMatrix{n, std::move(s)};
}

struct Candidate {
  Real value = std::numeric_limits<Real>::infinity();
  Vector point;       // stacked encoder+decoder parameters
  int stream = -1;    // provenance for the stable tie-break
  long index = -1;
};

bool candidate_less(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.stream != b.stream) return a.stream < b.stream;
  return a.index < b.index;
}

struct StreamOutcome {
  std::vector<Candidate> top;
  long evaluations = 0;
  long skipped = 0;
};

CodeParameterization split_point(int n, const Vector& point) {
  const int per = symplectic_param_count(n);
  CodeParameterization params;
  params.n = n;
  params.encoder_params = point.head(per);
  params.decoder_params = point.tail(per);
  return params;
}

// Objective over the stacked vector, with squeezing entries clamped into
// bounds so the simplex can wander freely.
struct BoundedObjective {
  const GaussianChannel* channel;
  int n;
  Real r_max;
  mutable long evaluations = 0;
  mutable long skipped = 0;

  Vector clamp(const Vector& point) const {
    const int per = symplectic_param_count(n);
    const int nb = pair_count(n);
    Vector out = point;
    for (int half = 0; half < 2; ++half) {
      const int base = half * per + nb + n;
      for (int i = 0; i < n; ++i) {
        out(base + i) = std::clamp(out(base + i), -r_max, r_max);
      }
    }
    return out;
  }

  Real operator()(const Vector& point) const {
    ++evaluations;
    try {
      return objective(split_point(n, clamp(point)), *channel);
    } catch (const std::exception&) {
      ++skipped;
      return std::numeric_limits<Real>::infinity();
    }
  }
};

void keep_top(std::vector<Candidate>& top, Candidate candidate, int limit) {
  top.push_back(std::move(candidate));
  std::sort(top.begin(), top.end(), candidate_less);
  if (static_cast<int>(top.size()) > limit) {
    top.resize(limit);
  }
}

StreamOutcome run_stream(const GaussianChannel& channel, int n, Real r_max, std::uint64_t seed,
                         int stream_index, long count, int keep) {
  StreamOutcome outcome;
  BoundedObjective eval{&channel, n, r_max};
  std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(stream_index)));
  std::uniform_real_distribution<Real> angle(-kPi, kPi);
  std::uniform_real_distribution<Real> squeeze(-r_max, r_max);

  const int per = symplectic_param_count(n);
  const int nb = pair_count(n);
  for (long i = 0; i < count; ++i) {
    Vector point(2 * per);
    if (stream_index == 0 && i == 0) {
      point.setZero();  // the trivial code is always probed
    } else {
      for (int half = 0; half < 2; ++half) {
        const int base = half * per;
        for (int k = 0; k < nb; ++k) point(base + k) = angle(rng);
        for (int k = 0; k < n; ++k) point(base + nb + k) = angle(rng);
        for (int k = 0; k < n; ++k) point(base + nb + n + k) = squeeze(rng);
        for (int k = 0; k < nb; ++k) point(base + nb + 2 * n + k) = angle(rng);
        for (int k = 0; k < n; ++k) point(base + 2 * nb + 2 * n + k) = angle(rng);
      }
    }
    const Real value = eval(point);
    if (std::isfinite(value)) {
      keep_top(outcome.top, Candidate{value, std::move(point), stream_index, i}, keep);
    }
  }
  outcome.evaluations = eval.evaluations;
  outcome.skipped = eval.skipped;
  return outcome;
}

// Standard Nelder-Mead simplex refinement under an evaluation budget. Returns
// the best point seen (including intermediate evaluations).
Candidate nelder_mead(const BoundedObjective& eval, const Vector& start, long budget) {
  const int dim = static_cast<int>(start.size());
  const Real alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  const Real step = 0.25;

  std::vector<Vector> simplex;
  std::vector<Real> values;
  Candidate best;

  auto probe = [&](const Vector& point) {
    const Real value = eval(point);
    if (value < best.value) {
      best.value = value;
      best.point = eval.clamp(point);
    }
    return value;
  };
  auto budget_left = [&]() { return eval.evaluations < budget; };

  simplex.push_back(start);
  values.push_back(probe(start));
  for (int i = 0; i < dim && budget_left(); ++i) {
    Vector vertex = start;
    vertex(i) += step;
    simplex.push_back(vertex);
    values.push_back(probe(vertex));
  }
  if (static_cast<int>(simplex.size()) < dim + 1) {
    return best;
  }

  std::vector<int> order(dim + 1);
  while (budget_left()) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });

    Vector centroid = Vector::Zero(dim);
    for (int i = 0; i < dim; ++i) centroid += simplex[order[i]];
    centroid /= dim;
    const int worst = order[dim];

    const Vector reflected = centroid + alpha * (centroid - simplex[worst]);
    const Real f_reflected = probe(reflected);
    if (f_reflected < values[order[0]] && budget_left()) {
      const Vector expanded = centroid + gamma * (centroid - simplex[worst]);
      const Real f_expanded = probe(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
    } else if (f_reflected < values[order[dim - 1]]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
    } else if (budget_left()) {
      const Vector contracted = centroid + rho * (simplex[worst] - centroid);
      const Real f_contracted = probe(contracted);
      if (f_contracted < values[worst]) {
        simplex[worst] = contracted;
        values[worst] = f_contracted;
      } else {
        for (int i = 1; i <= dim && budget_left(); ++i) {
          simplex[order[i]] = simplex[order[0]] + sigma * (simplex[order[i]] - simplex[order[0]]);
          values[order[i]] = probe(simplex[order[i]]);
        }
      }
    }
  }
  return best;
}

}  // namespace

int symplectic_param_count(int n_modes) { return n_modes * n_modes + 2 * n_modes; }

CodeParameterization zero_parameterization(int n_modes) {
  CodeParameterization params;
  params.n = n_modes;
  params.encoder_params = Vector::Zero(symplectic_param_count(n_modes));
  params.decoder_params = Vector::Zero(symplectic_param_count(n_modes));
  return params;
}

GECCode realize(const CodeParameterization& params, Real r_max) {
  if (params.n < 1) {
    throw std::invalid_argument("realize: need at least one mode");
  }
  return GECCode{params.n, symplectic_from_params(params.n, params.encoder_params, r_max),
                 symplectic_from_params(params.n, params.decoder_params, r_max)};
}

Real objective(const CodeParameterization& params, const GaussianChannel& channel) {
  return degradation_of_code(realize(params), channel);
}

SearchMethod search_method_from_string(const std::string& name) {
  if (name == "random") return SearchMethod::random;
  if (name == "nelder-mead-multistart") return SearchMethod::nelder_mead_multistart;
  throw std::invalid_argument("unknown search method: " + name +
                              " (expected random or nelder-mead-multistart)");
}

std::string to_string(SearchMethod method) {
  return method == SearchMethod::random ? "random" : "nelder-mead-multistart";
}

SearchResult search(const GaussianChannel& channel, int n_modes, long budget, std::uint64_t seed,
                    SearchMethod method, const SearchOptions& options) {
  require_valid(channel);
  if (budget < 1) {
    throw std::invalid_argument("search: budget must be at least 1");
  }
  if (n_modes < 1 || n_modes > options.n_max) {
    throw std::invalid_argument("search: mode count out of range");
  }

  SearchResult result;
  result.seed = seed;
  result.baseline_D = entanglement_degradation(channel).D;

  const long sample_budget =
      method == SearchMethod::random ? budget : std::max<long>(1, budget / 2);
  const int streams = static_cast<int>(std::min<long>(options.streams, sample_budget));

  // Deterministic concurrency: each stream owns an RNG derived from
  // (seed, stream index); the reduction below is schedule-independent.
  std::vector<std::future<StreamOutcome>> futures;
  futures.reserve(streams);
  for (int i = 0; i < streams; ++i) {
    const long count = sample_budget / streams + (i < sample_budget % streams ? 1 : 0);
    futures.push_back(std::async(std::launch::async, run_stream, std::cref(channel), n_modes,
                                 options.r_max, seed, i, count, options.refine_starts));
  }
  std::vector<Candidate> pool;
  for (auto& f : futures) {
    StreamOutcome outcome = f.get();
    result.evaluations += outcome.evaluations;
    result.skipped += outcome.skipped;
    for (auto& c : outcome.top) {
      pool.push_back(std::move(c));
    }
  }
  std::sort(pool.begin(), pool.end(), candidate_less);

  Candidate best = pool.empty() ? Candidate{} : pool.front();

  if (method == SearchMethod::nelder_mead_multistart && !pool.empty()) {
    const long refine_budget = budget - result.evaluations;
    const int starts = std::min<int>(options.refine_starts, static_cast<int>(pool.size()));
    if (refine_budget > 0 && starts > 0) {
      std::vector<std::future<std::pair<Candidate, std::pair<long, long>>>> refine;
      refine.reserve(starts);
      for (int i = 0; i < starts; ++i) {
        const long share = refine_budget / starts + (i < refine_budget % starts ? 1 : 0);
        refine.push_back(std::async(std::launch::async, [&, i, share]() {
          BoundedObjective eval{&channel, n_modes, options.r_max};
          Candidate refined = nelder_mead(eval, pool[i].point, share);
          refined.stream = pool[i].stream;
          refined.index = pool[i].index;
          return std::make_pair(std::move(refined),
                                std::make_pair(eval.evaluations, eval.skipped));
        }));
      }
      for (auto& f : refine) {
        auto [candidate, counts] = f.get();
        result.evaluations += counts.first;
        result.skipped += counts.second;
        if (candidate.point.size() > 0 && candidate_less(candidate, best)) {
          best = std::move(candidate);
        }
      }
    }
  }

  if (best.point.size() == 0) {
    throw std::runtime_error("search: every objective evaluation failed");
  }
  result.best_D = best.value;
  result.best_params = split_point(n_modes, best.point);
  const GaussianChannel effective = effective_channel(realize(result.best_params, options.r_max), channel);
  result.best_det_M_GC = effective.M.determinant();
  result.best_det_N_GC = effective.N.determinant();
  result.violated = result.best_D < result.baseline_D - options.violation_tol;
  return result;
}

ChannelFamily channel_family_from_string(const std::string& name) {
  if (name == "attenuation") return ChannelFamily::attenuation;
  if (name == "amplification") return ChannelFamily::amplification;
  if (name == "classical-noise") return ChannelFamily::classical_noise;
  throw std::invalid_argument("unknown channel family: " + name);
}

std::string to_string(ChannelFamily family) {
  switch (family) {
    case ChannelFamily::attenuation: return "attenuation";
    case ChannelFamily::amplification: return "amplification";
    case ChannelFamily::classical_noise: return "classical-noise";
  }
  return "?";
}

GaussianChannel family_channel(ChannelFamily family, Real param) {
  switch (family) {
    case ChannelFamily::attenuation: return attenuation(param);
    case ChannelFamily::amplification: return amplification(param);
    case ChannelFamily::classical_noise:
      if (!(param > 0)) {
        throw std::invalid_argument("classical-noise sweep parameter is det N and must be > 0");
      }
      return classical_noise(std::sqrt(param));
  }
  throw std::invalid_argument("unknown channel family");
}

std::vector<SweepRow> sweep_report(ChannelFamily family, const std::vector<Real>& grid,
                                   int n_modes, long budget, std::uint64_t seed,
                                   SearchMethod method, const SearchOptions& options) {
  if (grid.empty()) {
    throw std::invalid_argument("sweep_report: empty grid");
  }
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    SweepRow row;
    row.family = to_string(family);
    row.param = grid[i];
    try {
      const GaussianChannel channel = family_channel(family, grid[i]);
      row.closed_form_D = entanglement_degradation(channel).D;
      row.finite_r_D = std::min<Real>(1.0, finite_r_degradation(channel, 8.0));
      const SearchResult sr = search(channel, n_modes, budget, derive_seed(seed, i), method, options);
      row.search_best_D = sr.best_D;
      row.violated = sr.violated;
    } catch (const std::exception& e) {
      row.note = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace gqec
