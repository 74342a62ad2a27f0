#include "qrand/randomizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qrand {

namespace {

constexpr Index kColumnChunk = 1024;

void require_dim(const RandomizingMap& map, Index dim, const char* what)
{
  if (dim != map.dim()) {
    throw DimensionError(std::string(what) + ": map acts on dimension " + std::to_string(map.dim()) +
                         ", got " + std::to_string(dim));
  }
}

}  // namespace

ComplexMatrix RandomizingMap::apply(const ComplexMatrix& m) const
{
  require_dim(*this, m.rows(), "RandomizingMap::apply");
  if (m.cols() != m.rows()) throw DimensionError("RandomizingMap::apply: matrix not square");
  ComplexMatrix sum = ComplexMatrix::Zero(dim(), dim());
  for (Index j = 0; j < size(); ++j) sum += ensemble_.conjugate(j, m);
  return sum / static_cast<double>(size());
}

ComplexMatrix RandomizingMap::apply_pure(const ComplexVector& psi) const
{
  require_dim(*this, psi.size(), "RandomizingMap::apply_pure");
  ComplexMatrix sum = ComplexMatrix::Zero(dim(), dim());
  for (Index start = 0; start < size(); start += kColumnChunk) {
    const Index width = std::min(kColumnChunk, size() - start);
    ComplexMatrix v(dim(), width);
    for (Index c = 0; c < width; ++c) v.col(c) = ensemble_.apply(start + c, psi);
    sum.noalias() += v * v.adjoint();
  }
  return sum / static_cast<double>(size());
}

ComplexMatrix RandomizingMap::apply_adjoint(const ComplexMatrix& m) const
{
  require_dim(*this, m.rows(), "RandomizingMap::apply_adjoint");
  ComplexMatrix sum = ComplexMatrix::Zero(dim(), dim());
  for (Index j = 0; j < size(); ++j) sum += ensemble_.conjugate_adjoint(j, m);
  return sum / static_cast<double>(size());
}

DensityOperator apply_map(const RandomizingMap& map, const DensityOperator& rho)
{
  require_dim(map, rho.dim(), "apply_map");
  return DensityOperator::trusted(map.apply(rho.matrix()));
}

double state_deviation(const RandomizingMap& map, const PureState& phi)
{
  const Index d = map.dim();
  ComplexMatrix delta = map.apply_pure(phi.amplitudes());
  delta.diagonal().array() -= 1.0 / static_cast<double>(d);
  return static_cast<double>(d) * operator_norm(hermitian_part(delta));
}

std::string_view to_string(StateSource source)
{
  switch (source) {
    case StateSource::haar_samples: return "haar-samples";
    case StateSource::net: return "net";
    case StateSource::adversarial_restarts: return "adversarial-restarts";
  }
  return "haar-samples";
}

void DeviationReport::merge(const DeviationReport& other)
{
  epsilon_emp = std::max(epsilon_emp, other.epsilon_emp);
  sample_count += other.sample_count;
  deviations.insert(deviations.end(), other.deviations.begin(), other.deviations.end());
}

DeviationReport measure_epsilon(const RandomizingMap& map, const std::vector<PureState>& states,
                                StateSource source)
{
  if (states.empty()) throw ContractError("measure_epsilon: empty state source");
  DeviationReport report;
  report.source = source;
  report.sample_count = states.size();
  report.deviations.reserve(states.size());
  for (const auto& phi : states) {
    require_dim(map, phi.dim(), "measure_epsilon");
    report.deviations.push_back(state_deviation(map, phi));
  }
  report.epsilon_emp = *std::max_element(report.deviations.begin(), report.deviations.end());
  return report;
}

DeviationReport measure_epsilon_haar(const RandomizingMap& map, std::size_t count,
                                     const SeededStream& stream)
{
  std::vector<PureState> states;
  states.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    SeededStream child = stream.derive(k);
    states.push_back(haar_pure_state(map.dim(), child));
  }
  return measure_epsilon(map, states, StateSource::haar_samples);
}

DeviationReport measure_epsilon_adversarial(const RandomizingMap& map, std::size_t restarts,
                                            const SeededStream& stream, std::size_t max_iterations)
{
  if (restarts == 0) throw ContractError("measure_epsilon_adversarial: no restarts");
  const Index d = map.dim();
  const double inv_d = 1.0 / static_cast<double>(d);
  DeviationReport report;
  report.source = StateSource::adversarial_restarts;
  report.sample_count = restarts;
  for (std::size_t r = 0; r < restarts; ++r) {
    SeededStream child = stream.derive(r);
    ComplexVector phi = haar_pure_state(d, child).amplitudes();
    double best = 0.0;
    for (std::size_t it = 0; it < max_iterations; ++it) {
      ComplexMatrix delta = map.apply_pure(phi);
      delta.diagonal().array() -= inv_d;
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> deviation_solver(hermitian_part(delta));
      const RealVector& lambda = deviation_solver.eigenvalues();
      const bool upper = lambda(d - 1) >= -lambda(0);
      const double dev = static_cast<double>(d) * (upper ? lambda(d - 1) : -lambda(0));
      if (it > 0 && dev <= best * (1.0 + 1e-12)) {
        best = std::max(best, dev);
        break;
      }
      best = std::max(best, dev);
      const ComplexVector v = deviation_solver.eigenvectors().col(upper ? d - 1 : 0);
      const ComplexMatrix pulled = map.apply_adjoint(v * v.adjoint());
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> pull_solver(hermitian_part(pulled));
      phi = pull_solver.eigenvectors().col(upper ? d - 1 : 0);
      phi.normalize();
    }
    report.deviations.push_back(best);
  }
  report.epsilon_emp = *std::max_element(report.deviations.begin(), report.deviations.end());
  return report;
}

std::uint64_t theoretical_n(Index d, double epsilon)
{
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("theoretical_n: requires 0 < eps < 1");
  }
  if (!(static_cast<double>(d) > 10.0 / epsilon)) {
    throw DomainError("theoretical_n: requires d > 10/eps (d = " + std::to_string(d) +
                      ", 10/eps = " + std::to_string(10.0 / epsilon) + ")");
  }
  const double dd = static_cast<double>(d);
  const double n = 134.0 * dd * std::log2(dd) / (epsilon * epsilon);
  return static_cast<std::uint64_t>(std::ceil(n));
}

double key_length(Index d, double epsilon)
{
  if (d < 2) throw DomainError("key_length: requires d >= 2");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("key_length: requires 0 < eps <= 1");
  const double log_d = std::log2(static_cast<double>(d));
  return log_d + std::log2(log_d) + std::log2(1.0 / (epsilon * epsilon)) + 8.0;
}

StateNet build_state_net(Index dim, double radius, const SeededStream& stream,
                         std::size_t rejection_streak)
{
  if (dim < 1 || dim > 4) throw DomainError("build_state_net: requires 1 <= dim <= 4");
  if (!(radius >= 0.3 && radius < 1.0)) {
    throw DomainError("build_state_net: requires 0.3 <= radius < 1");
  }
  StateNet net;
  net.dim = dim;
  net.radius = radius;
  // pure_trace_distance >= radius  <=>  |<a|b>|^2 <= 1 - radius^2/4
  const double max_overlap = 1.0 - radius * radius / 4.0;
  SeededStream draws = stream.derive(0);
  std::size_t streak = 0;
  while (streak < rejection_streak) {
    PureState candidate = haar_pure_state(dim, draws);
    ++net.candidates_drawn;
    const bool admit = std::none_of(net.points.begin(), net.points.end(), [&](const PureState& p) {
      return std::norm(p.overlap(candidate)) > max_overlap;
    });
    if (admit) {
      net.points.push_back(std::move(candidate));
      streak = 0;
    } else {
      ++streak;
    }
  }
  return net;
}

double min_pairwise_distance(const StateNet& net)
{
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < net.points.size(); ++i) {
    for (std::size_t j = i + 1; j < net.points.size(); ++j) {
      best = std::min(best, pure_trace_distance(net.points[i], net.points[j]));
    }
  }
  return best;
}

CoveringAudit audit_covering(const StateNet& net, std::size_t samples, const SeededStream& stream)
{
  if (net.points.empty()) throw ContractError("audit_covering: empty net");
  CoveringAudit audit;
  audit.samples = samples;
  SeededStream draws = stream.derive(1);
  for (std::size_t s = 0; s < samples; ++s) {
    const PureState fresh = haar_pure_state(net.dim, draws);
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& p : net.points) nearest = std::min(nearest, pure_trace_distance(p, fresh));
    audit.worst_distance = std::max(audit.worst_distance, nearest);
    if (nearest > net.radius) ++audit.uncovered;
  }
  return audit;
}

ComplexMatrix choi_state(const RandomizingMap& map)
{
  const Index d = map.dim();
  const Index big = d * d;
  const UnitaryEnsemble& ensemble = map.ensemble();
  ComplexMatrix choi = ComplexMatrix::Zero(big, big);
  for (Index start = 0; start < map.size(); start += 256) {
    const Index width = std::min<Index>(256, map.size() - start);
    ComplexMatrix w(big, width);
    for (Index c = 0; c < width; ++c) {
      const ComplexMatrix u = ensemble.member(start + c);
      // (U (x) I) sum_i |i>|i> has amplitude U(a, i) at index a*d + i
      for (Index a = 0; a < d; ++a) {
        for (Index i = 0; i < d; ++i) w(a * d + i, c) = u(a, i);
      }
    }
    choi.noalias() += w * w.adjoint();
  }
  choi /= static_cast<double>(map.size()) * static_cast<double>(d);
  return hermitian_part(choi);
}

EntanglementProbe entangled_probe(const RandomizingMap& map)
{
  const Index d = map.dim();
  if (d * d > 4096) throw DomainError("entangled_probe: requires d^2 <= 4096");
  const ComplexMatrix choi = choi_state(map);
  const double big = static_cast<double>(d * d);
  const RealVector lambda = hermitian_eigenvalues(choi);
  const double cutoff = 1e-8 * lambda.cwiseAbs().maxCoeff();
  EntanglementProbe probe;
  probe.choi_rank = static_cast<Index>(std::count_if(lambda.begin(), lambda.end(),
                                                     [cutoff](double x) { return x > cutoff; }));
  probe.trace_distance = (lambda.array() - 1.0 / big).abs().sum();
  probe.distance_floor = 2.0 * (1.0 - static_cast<double>(probe.choi_rank) / big);
  probe.rank_within_n = probe.choi_rank <= map.size();
  probe.distance_above_floor = probe.trace_distance >= probe.distance_floor - 1e-6;
  return probe;
}

SeparableDestruction separable_destruction_check(const RandomizingMap& map,
                                                 const std::vector<ProductTerm>& mixture)
{
  if (mixture.empty()) throw ContractError("separable_destruction_check: empty mixture");
  double total = 0.0;
  for (const auto& term : mixture) {
    if (term.weight < 0.0) throw ContractError("separable_destruction_check: negative weight");
    total += term.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ContractError("separable_destruction_check: weights sum to " + std::to_string(total));
  }
  const Index d = map.dim();
  const Index db = mixture.front().local_b.dim();
  ComplexMatrix output = ComplexMatrix::Zero(d * db, d * db);
  ComplexMatrix rho_b = ComplexMatrix::Zero(db, db);
  SeparableDestruction result;
  for (const auto& term : mixture) {
    require_dim(map, term.local_a.dim(), "separable_destruction_check");
    if (term.local_b.dim() != db) throw DimensionError("separable_destruction_check: B dims differ");
    const ComplexMatrix b = term.local_b.projector();
    output += term.weight * tensor_product(map.apply_pure(term.local_a.amplitudes()), b);
    rho_b += term.weight * b;
    result.component_epsilon = std::max(result.component_epsilon, state_deviation(map, term.local_a));
  }
  const ComplexMatrix reference =
      tensor_product(ComplexMatrix::Identity(d, d) / static_cast<double>(d), rho_b);
  result.distance = trace_norm(hermitian_part(ComplexMatrix(output - reference)));
  result.within_component_epsilon = result.distance <= result.component_epsilon + 1e-6;
  result.certified_exact = map.ensemble().full_weyl();
  return result;
}

}  // namespace qrand
