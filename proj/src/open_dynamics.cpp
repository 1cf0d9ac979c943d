#include "polariton/open_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "polariton/errors.hpp"

namespace polariton {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kB5[7] = {35.0 / 384,     0.0,        500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
// b5 - b4, for the embedded error estimate.
constexpr double kE[7] = {71.0 / 57600,      0.0,         -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

using Matrix = Eigen::MatrixXcd;

double error_norm(const Matrix& err, const Matrix& y0, const Matrix& y1, double atol,
                  double rtol) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < err.cols(); ++j) {
    for (Eigen::Index i = 0; i < err.rows(); ++i) {
      const double scale =
          atol + rtol * std::max(std::abs(y0(i, j)), std::abs(y1(i, j)));
      const double e = std::abs(err(i, j)) / scale;
      sum += e * e;
    }
  }
  return std::sqrt(sum / static_cast<double>(err.size()));
}

// Adaptive Dormand-Prince driver; Rhs is (t, rho) -> drho/dt, evaluated at
// the stage times, which is how the ramp time dependence enters.
template <typename Rhs, typename AtSample>
void integrate(Rhs&& rhs, Matrix rho, double t_begin, double t_end,
               const IntegratorSettings& settings, std::span<const double> sample_times,
               AtSample&& at_sample) {
  const double span = t_end - t_begin;
  double t = t_begin;
  const bool fixed = settings.fixed_step > 0.0;
  double h = fixed ? settings.fixed_step
                   : (settings.initial_step > 0.0 ? settings.initial_step : span * 1e-4);
  if (settings.max_step > 0.0) h = std::min(h, settings.max_step);
  const double h_floor = span * 1e-15;

  Matrix k[7];
  bool have_first_stage = false;
  for (double ts : sample_times) {
    while (t < ts && ts - t > h_floor) {
      double step = std::min(h, ts - t);
      if (settings.max_step > 0.0) step = std::min(step, settings.max_step);
      // Stages; k[0] is reused from the previous accepted step (FSAL).
      if (!have_first_stage) k[0] = rhs(t, rho);
      for (int s = 1; s < 7; ++s) {
        Matrix y = rho;
        for (int j = 0; j < s; ++j) {
          if (kA[s][j] != 0.0) y += (step * kA[s][j]) * k[j];
        }
        k[s] = rhs(t + kC[s] * step, y);
      }
      Matrix next = rho;
      for (int s = 0; s < 7; ++s) {
        if (kB5[s] != 0.0) next += (step * kB5[s]) * k[s];
      }
      if (fixed) {
        rho = std::move(next);
        t += step;
        have_first_stage = false;
        continue;
      }
      Matrix err = Matrix::Zero(rho.rows(), rho.cols());
      for (int s = 0; s < 7; ++s) {
        if (kE[s] != 0.0) err += (step * kE[s]) * k[s];
      }
      const double norm = error_norm(err, rho, next, settings.atol, settings.rtol);
      if (norm <= 1.0) {
        rho = std::move(next);
        t += step;
        k[0] = k[6];  // FSAL: last stage was evaluated at (t, rho)
        have_first_stage = true;
        const double grow = norm == 0.0 ? 5.0 : 0.9 * std::pow(norm, -0.2);
        const double proposal = step * std::clamp(grow, 0.2, 5.0);
        // A step clipped to a sample boundary must not shrink the cruise size.
        h = step < h ? std::max(h, proposal) : proposal;
      } else {
        h = step * std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 0.9);
        have_first_stage = false;
      }
      if (h < h_floor) {
        std::ostringstream os;
        os << "evolve: step size underflow at t = " << t << " (h = " << h << ")";
        throw StepSizeUnderflowError(os.str());
      }
    }
    at_sample(ts, rho);
  }
}

}  // namespace

Eigen::MatrixXcd initial_mott_state(const FockBasis& basis, std::span<const int> occupation) {
  const int k = basis.index_of(occupation);  // throws when occ is outside the basis
  Matrix rho = Matrix::Zero(basis.dim(), basis.dim());
  rho(k, k) = 1.0;
  return rho;
}

Eigen::MatrixXcd lindblad_derivative(
    const Eigen::MatrixXcd& hamiltonian,
    const std::vector<std::pair<Eigen::MatrixXcd, double>>& jumps,
    const Eigen::MatrixXcd& rho) {
  if (hamiltonian.rows() != rho.rows() || hamiltonian.cols() != rho.cols()) {
    throw std::invalid_argument("lindblad_derivative: dimension mismatch");
  }
  const std::complex<double> minus_i(0.0, -1.0);
  Matrix drho = minus_i * (hamiltonian * rho - rho * hamiltonian);
  for (const auto& [op, rate] : jumps) {
    if (rate < 0.0) throw std::invalid_argument("lindblad_derivative: negative rate");
    if (op.rows() != rho.rows()) {
      throw std::invalid_argument("lindblad_derivative: jump operator dimension mismatch");
    }
    if (rate == 0.0) continue;
    const Matrix op_dag_op = op.adjoint() * op;
    drho += rate * (op * rho * op.adjoint() -
                    0.5 * (op_dag_op * rho + rho * op_dag_op));
  }
  return drho;
}

Eigen::MatrixXcd lindblad_derivative(
    const SparseOperator& hamiltonian,
    const std::vector<std::pair<SparseOperator, double>>& jumps,
    const Eigen::MatrixXcd& rho) {
  std::vector<std::pair<Matrix, double>> dense_jumps;
  dense_jumps.reserve(jumps.size());
  for (const auto& [op, rate] : jumps) dense_jumps.emplace_back(op.to_dense(), rate);
  return lindblad_derivative(hamiltonian.to_dense(), dense_jumps, rho);
}

double trace_error(const Eigen::MatrixXcd& rho) {
  return std::abs(rho.trace() - std::complex<double>(1.0, 0.0));
}

double hermiticity_defect(const Eigen::MatrixXcd& rho) {
  return (rho - rho.adjoint().eval()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double purity(const Eigen::MatrixXcd& rho) {
  return (rho * rho).trace().real();
}

ObservableSeries evolve(const Eigen::MatrixXcd& rho0, const PhysicalParams& params,
                        const RampSchedule& ramp, const CavityGraph& graph,
                        const FockBasis& basis, const IntegratorSettings& settings) {
  graph.validate();
  if (graph.site_count != basis.site_count()) {
    throw std::invalid_argument("evolve: graph and basis site counts differ");
  }
  if (rho0.rows() != basis.dim() || rho0.cols() != basis.dim()) {
    throw std::invalid_argument("evolve: initial state has wrong dimension");
  }
  if (settings.samples < 2) throw std::invalid_argument("evolve: need at least 2 samples");

  const int dim = basis.dim();
  const int sites = basis.site_count();

  // Static operator pieces; only the prefactors are time dependent.
  std::vector<Matrix> annihilators;
  std::vector<Eigen::VectorXd> site_number(static_cast<size_t>(sites));
  Eigen::VectorXd interaction = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd total_number = Eigen::VectorXd::Zero(dim);
  for (int s = 0; s < sites; ++s) {
    annihilators.push_back(ladder_operator(basis, s).to_dense());
    site_number[static_cast<size_t>(s)] = Eigen::VectorXd::Zero(dim);
  }
  for (int kstate = 0; kstate < dim; ++kstate) {
    const auto& occ = basis.state(kstate);
    for (int s = 0; s < sites; ++s) {
      const double n = occ[static_cast<size_t>(s)];
      site_number[static_cast<size_t>(s)][kstate] = n;
      interaction[kstate] += n * (n - 1.0);
      total_number[kstate] += n;
    }
  }
  Matrix hop = Matrix::Zero(dim, dim);
  for (auto edge : graph.edges) hop += hopping_operator(basis, edge).to_dense();

  ObservableSeries series;
  series.site_count = sites;
  for (double endpoint : {0.0, ramp.duration()}) {
    const ValidityReport report =
        validity_report(params.with_drive(ramp.omega_at(endpoint)), 2);
    if (!report.pass()) {
      series.warnings.push_back("validity check failed at t = " + std::to_string(endpoint) +
                                ": " + report.summary());
    }
  }

  const double t_end = ramp.duration();
  auto rhs = [&](double t, const Matrix& rho) -> Matrix {
    const EffectiveParams e =
        params_at_time(params, ramp, std::clamp(t, 0.0, t_end));
    Matrix h = e.J * hop;
    h.diagonal() += ((e.kappa * interaction + e.chem_shift * total_number).array())
                        .matrix()
                        .cast<std::complex<double>>();
    const std::complex<double> minus_i(0.0, -1.0);
    Matrix drho = minus_i * (h * rho - rho * h);
    if (e.Gamma > 0.0) {
      for (const auto& a : annihilators) drho += e.Gamma * (a * rho * a.adjoint());
      // sum_i {n_i, rho} = {N_total, rho}, elementwise for a diagonal operator
      drho -= (0.5 * e.Gamma) *
              ((total_number.replicate(1, dim) + total_number.transpose().replicate(dim, 1))
                   .array() *
               rho.array())
                  .matrix();
    }
    return drho;
  };

  std::vector<double> sample_times(static_cast<size_t>(settings.samples));
  for (int i = 0; i < settings.samples; ++i) {
    sample_times[static_cast<size_t>(i)] =
        t_end * static_cast<double>(i) / (settings.samples - 1);
  }

  series.min_eigenvalue_seen = std::numeric_limits<double>::infinity();
  auto record = [&](double t, const Matrix& rho) {
    const EffectiveParams e = params_at_time(params, ramp, t);
    series.times.push_back(t);
    series.omega_l.push_back(ramp.omega_at(t));
    series.kappa.push_back(e.kappa);
    series.J.push_back(e.J);
    series.gamma.push_back(e.Gamma);
    std::vector<double> means(static_cast<size_t>(sites)), flucts(static_cast<size_t>(sites));
    const Eigen::VectorXd weights = rho.diagonal().real();
    for (int s = 0; s < sites; ++s) {
      const Eigen::VectorXd& n = site_number[static_cast<size_t>(s)];
      const double mean = weights.dot(n);
      const double second = weights.dot(n.cwiseProduct(n).eval());
      means[static_cast<size_t>(s)] = mean;
      flucts[static_cast<size_t>(s)] = second - mean * mean;
    }
    series.mean_n.push_back(std::move(means));
    series.fluctuation.push_back(std::move(flucts));
    series.trace.push_back(rho.trace().real());
    series.purity.push_back(purity(rho));
    series.max_trace_drift = std::max(series.max_trace_drift, trace_error(rho));
    series.max_hermiticity_defect =
        std::max(series.max_hermiticity_defect, hermiticity_defect(rho));
    const double lambda_min = min_eigenvalue(rho);
    series.min_eigenvalue_seen = std::min(series.min_eigenvalue_seen, lambda_min);
    if (lambda_min < -settings.positivity_tol) {
      std::ostringstream os;
      os << "evolve: positivity violated at t = " << t
         << " (min eigenvalue = " << lambda_min << ")";
      throw PositivityError(os.str(), t, lambda_min);
    }
  };

  integrate(rhs, rho0, 0.0, t_end, settings, sample_times, record);
  return series;
}

}  // namespace polariton
