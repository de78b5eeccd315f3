#include "asympl/errors.hpp"
#include "asympl/reduction.hpp"

namespace asympl {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::vertical: return "vertical";
    case Regime::symplectizable: return "symplectizable";
    case Regime::reduced_family: return "reduced-family";
  }
  return "?";
}

PipelineReport pipeline(const AlmostSymplecticChart& chart, const FourierFunction& F,
                        const std::vector<RationalVector>& levels) {
  PipelineReport rep;
  rep.n = chart.n();
  const CTensor C = c_tensor(chart);
  rep.symplectic_chart = C.is_zero();
  rep.verdict = is_fully_hamiltonian(chart, C, F);
  if (!rep.verdict) throw RejectedHamiltonian(*rep.verdict.witness);
  rep.fg1 = genericity_check(chart, F, GenericityCondition::FG1);
  rep.fg2 = genericity_check(chart, F, GenericityCondition::FG2);
  rep.normalized = normalize_hamiltonian(chart, F);
  const NormalizedSystem& ns = *rep.normalized;
  const NormalizedSplit split = NormalizedSplit::of(ns);

  if (ns.r == 0) {
    rep.regime = Regime::vertical;
    rep.summary = "vertical: F is basic, the flow is linear on the tori (integrable)";
  } else if (ns.r == 1) {
    rep.regime = Regime::symplectizable;
    rep.symplectized = symplectize(ns.chart, ns.F, split);
    rep.summary = "symplectizable, completely integrable: first integrals F, J_1..J_" +
                  std::to_string(ns.k);
  } else {
    rep.regime = Regime::reduced_family;
    rep.summary = "reduces to " + std::to_string(ns.r) +
                  "-DOF symplectic family; integrability not implied";
    for (const auto& c : levels) {
      ReducedSystem red = reduce(ns.chart, ns.F, split, c);
      // Iterate while the reduced form is still non-closed.
      if (!c_tensor(red.chart).is_zero()) rep.nested.push_back(pipeline(red.chart, red.f_c));
      rep.reduced.push_back(std::move(red));
    }
  }
  return rep;
}

}  // namespace asympl
