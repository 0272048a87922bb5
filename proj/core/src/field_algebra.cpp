#include "qaction/field_algebra.hpp"

namespace qaction {

namespace {

const Rational kZero(0);
const Rational kOne(1);

ExactMatrix pauli(int which) {
  ExactMatrix m(2, 2);
  switch (which) {
    case 0:  // identity
      m.at(0, 0) = kOne;
      m.at(1, 1) = kOne;
      break;
    case 1:
      m.at(0, 1) = kOne;
      m.at(1, 0) = kOne;
      break;
    case 2:
      m.at(0, 1) = GaussianRational(kZero, Rational(-1));
      m.at(1, 0) = GaussianRational::unit_imag();
      break;
    case 3:
      m.at(0, 0) = kOne;
      m.at(1, 1) = Rational(-1);
      break;
    default:
      throw std::invalid_argument("pauli: index out of range");
  }
  return m;
}

// Exact kernel basis of an m x n rational matrix.
std::vector<std::vector<Rational>> kernel_basis(std::vector<std::vector<Rational>> A,
                                                std::size_t n_cols) {
  const std::size_t n_rows = A.size();
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n_cols && row < n_rows; ++col) {
    std::size_t pr = row;
    while (pr < n_rows && A[pr][col].is_zero()) ++pr;
    if (pr == n_rows) continue;
    std::swap(A[row], A[pr]);
    const Rational inv = kOne / A[row][col];
    for (std::size_t c = col; c < n_cols; ++c) A[row][c] = A[row][c] * inv;
    for (std::size_t r = 0; r < n_rows; ++r) {
      if (r == row || A[r][col].is_zero()) continue;
      const Rational f = A[r][col];
      for (std::size_t c = col; c < n_cols; ++c) {
        A[r][c] = A[r][c] - f * A[row][c];
      }
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(n_cols, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free_col = 0; free_col < n_cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Rational> v(n_cols, kZero);
    v[free_col] = kOne;
    for (std::size_t pr = 0; pr < pivot_col.size(); ++pr) {
      v[pivot_col[pr]] = -A[pr][free_col];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Rational> flatten_constraint(const ExactMatrix& m) {
  std::vector<Rational> out;
  out.reserve(2 * m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out.push_back(m.at(r, c).re);
      out.push_back(m.at(r, c).im);
    }
  }
  return out;
}

ExactMatrix combine(const std::vector<ExactMatrix>& basis, const std::vector<Rational>& coeff) {
  ExactMatrix acc(basis.front().rows(), basis.front().cols());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (coeff[i].is_zero()) continue;
    acc = acc + basis[i] * GaussianRational(coeff[i]);
  }
  return acc;
}

// Given a candidate space (basis of matrices) and a linear matrix constraint,
// return the sub-basis annihilated by it.
std::vector<ExactMatrix> impose(const std::vector<ExactMatrix>& basis,
                                const std::vector<ExactMatrix>& images) {
  if (basis.empty()) return {};
  const std::size_t d = basis.size();
  // columns: basis elements; rows: flattened image entries
  const std::vector<Rational> first = flatten_constraint(images[0]);
  const std::size_t m = first.size();
  std::vector<std::vector<Rational>> A(m, std::vector<Rational>(d, kZero));
  for (std::size_t j = 0; j < d; ++j) {
    const std::vector<Rational> f = j == 0 ? first : flatten_constraint(images[j]);
    for (std::size_t i = 0; i < m; ++i) A[i][j] = f[i];
  }
  std::vector<ExactMatrix> out;
  for (const auto& coeff : kernel_basis(std::move(A), d)) {
    out.push_back(combine(basis, coeff));
  }
  return out;
}

}  // namespace

AlgebraRep build_majorana_gammas() {
  const GaussianRational i = GaussianRational::unit_imag();
  AlgebraRep rep;
  rep.dimension = 4;
  rep.matrices.reserve(5);
  rep.matrices.push_back(kron(pauli(2), pauli(1)));       // gamma^0, imag antisym
  rep.matrices.push_back(kron(pauli(1), pauli(0)) * i);   // gamma^1, imag sym
  rep.matrices.push_back(kron(pauli(3), pauli(0)) * i);   // gamma^2, imag sym
  rep.matrices.push_back(kron(pauli(2), pauli(2)) * i);   // gamma^3, imag sym
  ExactMatrix g5 = rep.matrices[0] * rep.matrices[1] * rep.matrices[2] * rep.matrices[3];
  rep.matrices.push_back(std::move(g5));  // gamma^5, real antisym

  // Clifford relation {gamma^mu, gamma^nu} = -2 g^{mu nu}
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      ExactMatrix expect =
          ExactMatrix::identity(4) * GaussianRational(Rational(-2 * (mu == nu ? kMetricDiag[mu] : 0)));
      if (!(anticommutator(rep.matrices[mu], rep.matrices[nu]) == expect)) {
        throw std::logic_error("build_majorana_gammas: Clifford relation violated");
      }
    }
  }
  return rep;
}

SymmetryCensus symmetry_census(const std::vector<ExactMatrix>& matrices) {
  SymmetryCensus census;
  for (const ExactMatrix& m : matrices) {
    const bool sym = m.is_symmetric();
    const bool anti = m.is_antisymmetric();
    if (sym == anti) {  // both only for the zero matrix, neither otherwise
      throw std::invalid_argument("symmetry_census: matrix of indefinite symmetry");
    }
    if (sym) {
      ++census.n_symmetric;
    } else {
      ++census.n_antisymmetric;
    }
  }
  return census;
}

BoseObstructionReport check_bose_obstruction() {
  BoseObstructionReport report;
  const AlgebraRep gammas = build_majorana_gammas();

  // real symmetric 4x4 candidates for beta: 10 basis elements
  std::vector<ExactMatrix> basis;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a; b < 4; ++b) {
      ExactMatrix e(4, 4);
      e.at(a, b) = kOne;
      e.at(b, a) = kOne;
      basis.push_back(std::move(e));
    }
  }

  // constraints from demanding alpha^mu = beta gamma^mu antisymmetric and
  // imaginary: [beta, gamma^0] = 0 and {beta, gamma^k} = 0
  struct Constraint {
    int gamma_index;
    bool anticommute;
  };
  const std::vector<Constraint> constraints{{0, false}, {1, true}, {2, true}, {3, true}};

  std::vector<ExactMatrix> space = basis;
  for (const Constraint& c : constraints) {
    std::vector<ExactMatrix> images;
    images.reserve(space.size());
    for (const ExactMatrix& beta : space) {
      images.push_back(c.anticommute
                           ? anticommutator(beta, gammas.matrices[static_cast<std::size_t>(c.gamma_index)])
                           : commutator(beta, gammas.matrices[static_cast<std::size_t>(c.gamma_index)]));
    }
    std::vector<ExactMatrix> next = impose(space, images);
    report.surviving_dimension.push_back(next.size());
    if (next.empty()) {
      report.contradiction_found = true;
      report.blocking_gamma = c.gamma_index;
      report.witness_beta = space.front();
      report.nonvanishing_anticommutator =
          c.anticommute
              ? anticommutator(space.front(), gammas.matrices[static_cast<std::size_t>(c.gamma_index)])
              : commutator(space.front(), gammas.matrices[static_cast<std::size_t>(c.gamma_index)]);
      break;
    }
    space = std::move(next);
  }
  if (!report.contradiction_found && !space.empty()) {
    // should not happen: a surviving symmetric beta would refute the census
    report.contradiction_found = false;
  }

  // Fermi-type assignment: beta = gamma^0 (imaginary antisymmetric) makes
  // every alpha^mu = gamma^0 gamma^mu real and symmetric.
  {
    const ExactMatrix& g0 = gammas.matrices[0];
    bool ok = true;
    for (int mu = 0; mu < 4; ++mu) {
      const ExactMatrix alpha = g0 * gammas.matrices[static_cast<std::size_t>(mu)];
      ok = ok && alpha.is_real() && alpha.is_symmetric();
    }
    report.fermi_assignment_consistent = ok;
  }

  // dimension 2: no nonzero matrix anticommutes with all three Pauli
  // matrices, so a fourth mutually anticommuting element cannot exist
  {
    std::vector<ExactMatrix> basis2;
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        ExactMatrix re(2, 2), im(2, 2);
        re.at(a, b) = kOne;
        im.at(a, b) = GaussianRational::unit_imag();
        basis2.push_back(std::move(re));
        basis2.push_back(std::move(im));
      }
    }
    std::vector<ExactMatrix> space2 = basis2;
    for (int k = 1; k <= 3 && !space2.empty(); ++k) {
      std::vector<ExactMatrix> images;
      images.reserve(space2.size());
      for (const ExactMatrix& x : space2) {
        images.push_back(anticommutator(x, pauli(k)));
      }
      space2 = impose(space2, images);
    }
    report.dimension_two_impossible = space2.empty();
  }
  return report;
}

AlgebraRep build_kemmer_duffin(KemmerDuffinSpin spin) {
  AlgebraRep rep;
  if (spin == KemmerDuffinSpin::zero) {
    // components (phi_0, phi_1, phi_2, phi_3, phi)
    rep.dimension = 5;
    for (int mu = 0; mu < 4; ++mu) {
      ExactMatrix b(5, 5);
      b.at(static_cast<std::size_t>(mu), 4) = kOne;
      b.at(4, static_cast<std::size_t>(mu)) = Rational(mu == 0 ? 1 : -1);
      rep.matrices.push_back(std::move(b));
    }
  } else {
    // components (phi_0..phi_3, G_{01}, G_{02}, G_{03}, G_{12}, G_{13}, G_{23})
    rep.dimension = 10;
    const std::array<std::pair<int, int>, 6> pairs{
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    for (int sigma = 0; sigma < 4; ++sigma) {
      ExactMatrix b(10, 10);
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [alpha, beta] = pairs[p];
        const std::size_t row = 4 + p;
        // tensor rows: m G_{alpha beta} = d_alpha phi_beta - d_beta phi_alpha
        if (sigma == alpha) {
          b.at(row, static_cast<std::size_t>(beta)) = Rational(-1);
        }
        if (sigma == beta) {
          b.at(row, static_cast<std::size_t>(alpha)) = kOne;
        }
        // vector rows: m phi^nu = d_mu G^{mu nu}, lowered with the metric
        for (int nu = 0; nu < 4; ++nu) {
          Rational coeff = kZero;
          if (nu == beta && sigma == alpha) {
            coeff = coeff + Rational(kMetricDiag[static_cast<std::size_t>(sigma)]);
          }
          if (nu == alpha && sigma == beta) {
            coeff = coeff - Rational(kMetricDiag[static_cast<std::size_t>(sigma)]);
          }
          if (!coeff.is_zero()) {
            b.at(static_cast<std::size_t>(nu), row) = coeff;
          }
        }
      }
      rep.matrices.push_back(std::move(b));
    }
  }
  return rep;
}

std::optional<std::array<int, 3>> kemmer_duffin_defect(const AlgebraRep& rep) {
  for (int mu = 0; mu < 4; ++mu) {
    for (int sigma = 0; sigma < 4; ++sigma) {
      for (int nu = 0; nu < 4; ++nu) {
        const ExactMatrix& bm = rep.matrices[static_cast<std::size_t>(mu)];
        const ExactMatrix& bs = rep.matrices[static_cast<std::size_t>(sigma)];
        const ExactMatrix& bn = rep.matrices[static_cast<std::size_t>(nu)];
        ExactMatrix lhs = bm * bs * bn + bn * bs * bm;
        if (mu == sigma) {
          lhs = lhs + bn * GaussianRational(Rational(kMetricDiag[static_cast<std::size_t>(mu)]));
        }
        if (nu == sigma) {
          lhs = lhs + bm * GaussianRational(Rational(kMetricDiag[static_cast<std::size_t>(nu)]));
        }
        if (!lhs.is_zero()) {
          return std::array<int, 3>{mu, sigma, nu};
        }
      }
    }
  }
  return std::nullopt;
}

bool symmetrized_cubic_vanishes(const AlgebraRep& rep) {
  const auto& b = rep.matrices;
  auto metric_term = [&](int a, int c, int other) {
    if (a != c) return ExactMatrix(rep.dimension, rep.dimension);
    return b[static_cast<std::size_t>(other)] *
           GaussianRational(Rational(2 * kMetricDiag[static_cast<std::size_t>(a)]));
  };
  for (int mu = 0; mu < 4; ++mu) {
    for (int sigma = 0; sigma < 4; ++sigma) {
      for (int nu = 0; nu < 4; ++nu) {
        const std::array<int, 3> idx{mu, sigma, nu};
        ExactMatrix acc(rep.dimension, rep.dimension);
        const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const auto& p : perms) {
          acc = acc + b[static_cast<std::size_t>(idx[static_cast<std::size_t>(p[0])])] *
                          b[static_cast<std::size_t>(idx[static_cast<std::size_t>(p[1])])] *
                          b[static_cast<std::size_t>(idx[static_cast<std::size_t>(p[2])])];
        }
        acc = acc + metric_term(mu, sigma, nu) + metric_term(nu, sigma, mu) +
              metric_term(mu, nu, sigma);
        if (!acc.is_zero()) {
          return false;
        }
      }
    }
  }
  return true;
}

Rational FourMomentum::invariant() const {
  Rational acc = kZero;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    acc = acc + Rational(kMetricDiag[mu]) * p[mu] * p[mu];
  }
  return acc;
}

ExactMatrix klein_gordon_residual(const AlgebraRep& rep, const FourMomentum& p) {
  ExactMatrix M(rep.dimension, rep.dimension);
  for (std::size_t mu = 0; mu < 4; ++mu) {
    M = M + rep.matrices[mu] * GaussianRational(kZero, p.p[mu]);  // i beta^mu p_mu
  }
  return M * M * M - M * GaussianRational(p.invariant());
}

FourMomentum rational_boost_tx(const FourMomentum& p) {
  const Rational ch(5, 4), sh(3, 4);
  FourMomentum out = p;
  // covariant components: p'_0 = ch p_0 - sh p_1, p'_1 = -sh p_0 + ch p_1
  out.p[0] = ch * p.p[0] - sh * p.p[1];
  out.p[1] = ch * p.p[1] - sh * p.p[0];
  return out;
}

bool dirac_kinematic_antihermitian(const AlgebraRep& gammas) {
  const GaussianRational i = GaussianRational::unit_imag();
  for (int mu = 0; mu < 4; ++mu) {
    const ExactMatrix alpha = mu == 0 ? ExactMatrix::identity(4)
                                      : gammas.matrices[0] * gammas.matrices[static_cast<std::size_t>(mu)];
    const ExactMatrix A = alpha * i;
    if (!(A.adjoint() == -A)) {
      return false;
    }
  }
  return true;
}

}  // namespace qaction
