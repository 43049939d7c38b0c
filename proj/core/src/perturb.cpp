#include "windcert/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace windcert {

namespace {

constexpr double kRelatorConverged = 1e-8;

struct Letter {
  int gen;
  int sign;  // +1 or -1
};

std::vector<Letter> flatten(const GroupWord& w) {
  std::vector<Letter> out;
  for (const Syllable& s : w.syllables()) {
    const int sign = s.exp > 0 ? 1 : -1;
    for (std::int64_t k = 0; k < (s.exp < 0 ? -s.exp : s.exp); ++k)
      out.push_back({s.gen, sign});
  }
  return out;
}

ComplexMatrix haar_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : Complex(1.0, 0.0);
  }
  return q;
}

// One Newton-Schulz step toward the polar factor; keeps iterates unitary to
// rounding error over long runs.
void reunitarize(std::vector<ComplexMatrix>& mats) {
  for (ComplexMatrix& u : mats) u = 1.5 * u - 0.5 * u * (u.adjoint() * u);
}

struct SurrogateTerm {
  std::vector<Letter> letters;
  ComplexMatrix target;
  double weight;
};

// Builds the squared-Frobenius surrogate terms: support words against the
// target map (weight 1) and relators against the identity (weight lambda).
std::vector<SurrogateTerm> surrogate_terms(const SearchProblem& p) {
  std::vector<SurrogateTerm> terms;
  const ComplexMatrix eye = ComplexMatrix::Identity(p.dim, p.dim);
  for (const GroupWord& w : p.support) terms.push_back({flatten(w), p.target(w), 1.0});
  for (const GroupWord& r : p.group.relators())
    terms.push_back({flatten(r), eye, p.penalty_weight});
  return terms;
}

double surrogate_value(const std::vector<ComplexMatrix>& gens,
                       const std::vector<SurrogateTerm>& terms) {
  double value = 0.0;
  for (const SurrogateTerm& t : terms) {
    ComplexMatrix prod = ComplexMatrix::Identity(gens.front().rows(), gens.front().cols());
    for (const Letter& l : t.letters) {
      const ComplexMatrix& u = gens[static_cast<std::size_t>(l.gen)];
      prod = l.sign > 0 ? ComplexMatrix(prod * u) : ComplexMatrix(prod * u.adjoint());
    }
    value += t.weight * (prod - t.target).squaredNorm();
  }
  return value;
}

// Euclidean gradient of the surrogate w.r.t. each generator, via prefix and
// suffix products of every term's letter sequence.
std::vector<ComplexMatrix> surrogate_gradient(const std::vector<ComplexMatrix>& gens,
                                              const std::vector<SurrogateTerm>& terms) {
  const Eigen::Index n = gens.front().rows();
  std::vector<ComplexMatrix> grad(gens.size(), ComplexMatrix::Zero(n, n));
  for (const SurrogateTerm& t : terms) {
    const std::size_t len = t.letters.size();
    std::vector<ComplexMatrix> prefix(len + 1), suffix(len + 1);
    prefix[0] = ComplexMatrix::Identity(n, n);
    suffix[len] = ComplexMatrix::Identity(n, n);
    for (std::size_t i = 0; i < len; ++i) {
      const Letter& l = t.letters[i];
      const ComplexMatrix& u = gens[static_cast<std::size_t>(l.gen)];
      prefix[i + 1] = l.sign > 0 ? ComplexMatrix(prefix[i] * u) : ComplexMatrix(prefix[i] * u.adjoint());
    }
    for (std::size_t i = len; i-- > 0;) {
      const Letter& l = t.letters[i];
      const ComplexMatrix& u = gens[static_cast<std::size_t>(l.gen)];
      suffix[i] = l.sign > 0 ? ComplexMatrix(u * suffix[i + 1]) : ComplexMatrix(u.adjoint() * suffix[i + 1]);
    }
    const ComplexMatrix err = prefix[len] - t.target;
    for (std::size_t i = 0; i < len; ++i) {
      const Letter& l = t.letters[i];
      const ComplexMatrix& a = prefix[i];
      const ComplexMatrix& b = suffix[i + 1];
      // d||P - T||_F^2 = 2 Re Tr(E^* A dU B) for a +1 letter, with the
      // adjoint variant for -1 letters; both reduce to the forms below.
      if (l.sign > 0)
        grad[static_cast<std::size_t>(l.gen)] += 2.0 * t.weight * (a.adjoint() * err * b.adjoint());
      else
        grad[static_cast<std::size_t>(l.gen)] += 2.0 * t.weight * (b * err.adjoint() * a);
    }
  }
  return grad;
}

ComplexMatrix skew_part(const ComplexMatrix& m) { return 0.5 * (m - m.adjoint()); }

}  // namespace

SearchProblem make_search_problem(const AsymptoticRep& rep, std::vector<GroupWord> support,
                                  double penalty_weight, std::int64_t budget) {
  return SearchProblem{rep.group(),
                       rep.dim(),
                       [rep](const GroupWord& w) { return rep(w).matrix(); },
                       std::move(support),
                       penalty_weight,
                       budget};
}

ComplexMatrix evaluate_word(const std::vector<ComplexMatrix>& generators, const GroupWord& w) {
  if (generators.empty()) throw InvalidInputError("evaluate_word: no generator matrices");
  const Eigen::Index n = generators.front().rows();
  ComplexMatrix prod = ComplexMatrix::Identity(n, n);
  for (const Letter& l : flatten(w)) {
    const ComplexMatrix& u = generators.at(static_cast<std::size_t>(l.gen));
    prod = l.sign > 0 ? ComplexMatrix(prod * u) : ComplexMatrix(prod * u.adjoint());
  }
  return prod;
}

namespace {

double support_distance(const std::vector<ComplexMatrix>& gens, const SearchProblem& p) {
  double worst = 0.0;
  for (const GroupWord& w : p.support)
    worst = std::max(worst, operator_norm(evaluate_word(gens, w) - p.target(w)));
  return worst;
}

double relator_distance(const std::vector<ComplexMatrix>& gens, const SearchProblem& p) {
  double worst = 0.0;
  const ComplexMatrix eye = ComplexMatrix::Identity(p.dim, p.dim);
  for (const GroupWord& r : p.group.relators())
    worst = std::max(worst, operator_norm(evaluate_word(gens, r) - eye));
  return worst;
}

bool relators_are_commutator_words(const GroupData& group) {
  for (const GroupWord& r : group.relators()) {
    std::vector<std::int64_t> sums(group.generator_count(), 0);
    for (const Syllable& s : r.syllables()) sums[static_cast<std::size_t>(s.gen)] += s.exp;
    for (std::int64_t v : sums)
      if (v != 0) return false;
  }
  return true;
}

}  // namespace

double objective(const std::vector<UnitaryMatrix>& candidate, const SearchProblem& problem) {
  if (candidate.size() != problem.group.generator_count())
    throw InvalidInputError("objective: one unitary per generator required");
  std::vector<ComplexMatrix> gens;
  gens.reserve(candidate.size());
  for (const UnitaryMatrix& u : candidate) {
    if (u.dim() != problem.dim)
      throw InvalidInputError("objective: candidate dimension mismatch");
    gens.push_back(u.matrix());
  }
  return support_distance(gens, problem) +
         problem.penalty_weight * relator_distance(gens, problem);
}

UnitaryMatrix joint_diagonalizer(const std::vector<ComplexMatrix>& matrices, int max_sweeps) {
  if (matrices.empty()) throw InvalidInputError("joint_diagonalizer: no matrices");
  const Eigen::Index n = matrices.front().rows();

  // Warm start from the eigenvector frame of a generic linear combination;
  // exact already when the inputs commute and the combination is nondegenerate.
  ComplexMatrix combo = ComplexMatrix::Zero(n, n);
  double phase = 0.37;
  for (const ComplexMatrix& m : matrices) {
    combo += std::polar(1.0, phase) * m;
    phase += 1.01;
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> es(combo);
  ComplexMatrix w = ComplexMatrix::Identity(n, n);
  if (es.info() == Eigen::Success) {
    Eigen::HouseholderQR<ComplexMatrix> qr(es.eigenvectors());
    w = qr.householderQ();
  }

  std::vector<ComplexMatrix> a;
  a.reserve(matrices.size());
  for (const ComplexMatrix& m : matrices) a.push_back(w.adjoint() * m * w);

  auto off_energy = [&] {
    double e = 0.0;
    for (const ComplexMatrix& m : a) {
      e += m.squaredNorm();
      e -= m.diagonal().squaredNorm();
    }
    return e;
  };

  double off = off_energy();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        // Cardoso-Souloumiac plane rotation maximizing the joint diagonal mass
        // of the (p,q) blocks.
        Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
        for (const ComplexMatrix& m : a) {
          const Eigen::Vector3cd h(m(p, p) - m(q, q), m(p, q) + m(q, p),
                                   Complex(0.0, 1.0) * (m(q, p) - m(p, q)));
          g += (h.conjugate() * h.transpose()).real();
        }
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> ges(g);
        Eigen::Vector3d v = ges.eigenvectors().col(2);  // largest eigenvalue
        if (v(0) < 0) v = -v;
        const double c = std::sqrt(0.5 * (v(0) + 1.0));
        if (!(c > 0.0)) continue;
        const Complex s = Complex(v(1), -v(2)) / (2.0 * c);
        if (std::abs(s) < 1e-15) continue;
        // Apply the rotation on columns/rows p, q of every matrix and fold it
        // into the accumulated frame.
        for (ComplexMatrix& m : a) {
          const Eigen::VectorXcd colp = m.col(p), colq = m.col(q);
          m.col(p) = c * colp + std::conj(s) * colq;
          m.col(q) = -s * colp + c * colq;
          const Eigen::RowVectorXcd rowp = m.row(p), rowq = m.row(q);
          m.row(p) = c * rowp + s * rowq;
          m.row(q) = -std::conj(s) * rowp + c * rowq;
        }
        const Eigen::VectorXcd wp = w.col(p), wq = w.col(q);
        w.col(p) = c * wp + std::conj(s) * wq;
        w.col(q) = -s * wp + c * wq;
      }
    }
    const double next = off_energy();
    if (next >= off - 1e-14 * (1.0 + off)) break;
    off = next;
  }

  // Householder accumulation keeps w unitary to rounding error; certify it.
  return UnitaryMatrix(w, 1e-8 * static_cast<double>(n));
}

namespace {

// Snap a candidate to an exactly commuting tuple: joint-diagonalize, keep the
// unit-modulus projections of the diagonals.
std::vector<ComplexMatrix> commuting_projection(const std::vector<ComplexMatrix>& gens,
                                                int max_sweeps) {
  const UnitaryMatrix w = joint_diagonalizer(gens, max_sweeps);
  std::vector<ComplexMatrix> out;
  out.reserve(gens.size());
  for (const ComplexMatrix& m : gens) {
    const ComplexMatrix rotated = w.matrix().adjoint() * m * w.matrix();
    Eigen::VectorXcd d = rotated.diagonal();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      const double mag = std::abs(d(i));
      d(i) = mag > 1e-12 ? d(i) / mag : Complex(1.0, 0.0);
    }
    out.push_back(w.matrix() * d.asDiagonal() * w.matrix().adjoint());
  }
  return out;
}

}  // namespace

PerturbationReport search(const SearchProblem& problem, std::uint64_t seed) {
  if (problem.budget < 1) throw InvalidInputError("search: budget must be at least 1");
  if (problem.support.empty()) throw InvalidInputError("search: empty support set");
  const std::size_t k = problem.group.generator_count();
  const int n = problem.dim;

  std::vector<ComplexMatrix> gens;
  gens.reserve(k);
  if (seed == 0) {
    for (std::size_t g = 0; g < k; ++g)
      gens.push_back(problem.target(GroupWord({{static_cast<int>(g), 1}})));
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t g = 0; g < k; ++g) gens.push_back(haar_unitary(n, rng));
  }

  const std::vector<SurrogateTerm> terms = surrogate_terms(problem);
  double value = surrogate_value(gens, terms);
  std::vector<ComplexMatrix> best = gens;
  double best_value = value;

  PerturbationReport report;
  report.seed = seed;
  const std::int64_t sample_every = std::max<std::int64_t>(1, problem.budget / 100);
  report.trajectory.push_back({0, value});

  double step = 0.1;
  bool exhausted = true;
  std::int64_t iter = 0;
  for (; iter < problem.budget; ++iter) {
    const std::vector<ComplexMatrix> euclid = surrogate_gradient(gens, terms);
    std::vector<ComplexMatrix> direction(k);
    double slope = 0.0;
    for (std::size_t g = 0; g < k; ++g) {
      direction[g] = skew_part(gens[g].adjoint() * euclid[g]);
      slope += direction[g].squaredNorm();
    }
    if (slope <= 1e-24 || value <= 1e-24) {
      exhausted = false;  // stationary point or exact fit
      break;
    }

    double t = std::clamp(step * 2.0, 1e-12, 10.0);
    bool accepted = false;
    while (t >= 1e-16) {
      std::vector<ComplexMatrix> trial(k);
      for (std::size_t g = 0; g < k; ++g)
        trial[g] = gens[g] * exp_skew_hermitian(-t * direction[g]).matrix();
      const double trial_value = surrogate_value(trial, terms);
      if (trial_value <= value - 1e-4 * t * slope) {
        gens = std::move(trial);
        value = trial_value;
        step = t;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      exhausted = false;  // line search stalled; no descent direction left
      break;
    }
    if ((iter + 1) % 32 == 0) {
      reunitarize(gens);
      value = surrogate_value(gens, terms);
    }
    if (value < best_value) {
      best = gens;
      best_value = value;
    }
    if ((iter + 1) % sample_every == 0) report.trajectory.push_back({iter + 1, value});
  }
  report.iterations = iter;
  if (report.trajectory.back().iteration != iter) report.trajectory.push_back({iter, best_value});

  reunitarize(best);
  report.pre_polish_distance_inf = support_distance(best, problem);
  report.pre_polish_relator_defect = relator_distance(best, problem);
  report.best_distance_inf = report.pre_polish_distance_inf;
  report.relator_defect = report.pre_polish_relator_defect;
  report.final_objective = surrogate_value(best, terms);

  if (problem.polish && relators_are_commutator_words(problem.group)) {
    const std::vector<ComplexMatrix> snapped = commuting_projection(best, problem.polish_sweeps);
    const double snapped_distance = support_distance(snapped, problem);
    const double snapped_relator = relator_distance(snapped, problem);
    // Prefer the exact representation unless the raw iterate already is one
    // and sits closer to the target.
    const bool keep_raw =
        report.pre_polish_relator_defect <= kRelatorConverged &&
        report.pre_polish_distance_inf <= snapped_distance;
    if (!keep_raw) {
      report.best_distance_inf = snapped_distance;
      report.relator_defect = snapped_relator;
      report.final_objective = surrogate_value(snapped, terms);
    }
  }

  report.converged = !exhausted && report.relator_defect <= kRelatorConverged;
  return report;
}

double oracle_min_distance_scalar(const SearchProblem& problem, double resolution,
                                  int conjugacy_samples, std::uint64_t seed) {
  if (problem.dim > 2) throw InvalidInputError("oracle_min_distance_scalar: dimension must be <= 2");
  if (resolution <= 0) throw InvalidInputError("oracle_min_distance_scalar: resolution must be positive");
  if (problem.group.generator_count() != 2)
    throw InvalidInputError("oracle_min_distance_scalar: exactly two generators required");
  if (!relators_are_commutator_words(problem.group))
    throw InvalidInputError(
        "oracle_min_distance_scalar: relators must vanish under commuting assignments");

  // Exponent sums of each support word drive the phase evaluation.
  struct SupportExp {
    std::int64_t e0, e1;
    ComplexMatrix target;
  };
  std::vector<SupportExp> sup;
  for (const GroupWord& w : problem.support) {
    std::int64_t e0 = 0, e1 = 0;
    for (const Syllable& s : w.syllables()) (s.gen == 0 ? e0 : e1) += s.exp;
    sup.push_back({e0, e1, problem.target(w)});
  }

  const auto steps = static_cast<std::int64_t>(std::ceil(2.0 * std::numbers::pi / resolution));
  const double h = 2.0 * std::numbers::pi / static_cast<double>(steps);

  if (problem.dim == 1) {
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t i = 0; i < steps; ++i) {
      const double theta = h * static_cast<double>(i);
      for (std::int64_t j = 0; j < steps; ++j) {
        const double phi = h * static_cast<double>(j);
        double worst = 0.0;
        for (const SupportExp& s : sup) {
          const double angle = theta * static_cast<double>(s.e0) + phi * static_cast<double>(s.e1);
          worst = std::max(worst, std::abs(std::polar(1.0, angle) - s.target(0, 0)));
          if (worst >= best) break;
        }
        best = std::min(best, worst);
      }
    }
    return best;
  }

  // n = 2: pairs of commuting unitaries W diag(e^{i theta}) W^*; the support
  // distance is conjugation-invariant in W only jointly with the target, so W
  // is sampled coarsely (identity plus Haar draws).
  std::mt19937_64 rng(seed);
  std::vector<ComplexMatrix> frames{ComplexMatrix::Identity(2, 2)};
  for (int s = 0; s < conjugacy_samples; ++s) frames.push_back(haar_unitary(2, rng));

  auto op_norm_2x2 = [](const ComplexMatrix& x) {
    const double f2 = x.squaredNorm();
    const double d = std::abs(x.determinant());
    const double disc = std::max(0.0, f2 * f2 - 4.0 * d * d);
    return std::sqrt(0.5 * (f2 + std::sqrt(disc)));
  };

  double best = std::numeric_limits<double>::infinity();
  for (const ComplexMatrix& w : frames) {
    const ComplexMatrix wh = w.adjoint();
    for (std::int64_t i1 = 0; i1 < steps; ++i1)
      for (std::int64_t i2 = 0; i2 < steps; ++i2)
        for (std::int64_t j1 = 0; j1 < steps; ++j1)
          for (std::int64_t j2 = 0; j2 < steps; ++j2) {
            const double t1 = h * static_cast<double>(i1), t2 = h * static_cast<double>(i2);
            const double p1 = h * static_cast<double>(j1), p2 = h * static_cast<double>(j2);
            double worst = 0.0;
            for (const SupportExp& s : sup) {
              Eigen::Vector2cd d;
              d << std::polar(1.0, t1 * static_cast<double>(s.e0) + p1 * static_cast<double>(s.e1)),
                  std::polar(1.0, t2 * static_cast<double>(s.e0) + p2 * static_cast<double>(s.e1));
              const ComplexMatrix pi_w = w * d.asDiagonal() * wh;
              worst = std::max(worst, op_norm_2x2(pi_w - s.target));
              if (worst >= best) break;
            }
            best = std::min(best, worst);
          }
  }
  return best;
}

}  // namespace windcert
