#include "abrep/serialize.hpp"

namespace abrep {

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(HalfInt h) { return Json{{"twice", h.twice}}; }

Json to_json(const CMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(to_json(m(r, c)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Json to_json(const FourVector& p) { return Json::array({p[0], p[1], p[2], p[3]}); }

Json to_json(const LorentzWord& w) {
  Json out = Json::array();
  for (const auto& prim : w.primitives)
    out.push_back(Json{{"kind", prim.kind == PrimitiveKind::Rotation ? "rotation" : "boost"},
                       {"axis", Json::array({prim.axis[0], prim.axis[1], prim.axis[2]})},
                       {"parameter", prim.parameter}});
  return out;
}

Json to_json(const FieldRep& rep) {
  Json out{{"name", rep.name}, {"dim", rep.dim}};
  if (rep.label)
    out["label"] = Json{{"A", to_json(rep.label->first)}, {"B", to_json(rep.label->second)}};
  return out;
}

Json to_json(const CoefficientSet& cs) {
  return Json{{"rep", to_json(cs.rep)},
              {"j", to_json(cs.j)},
              {"m", cs.m},
              {"u0", to_json(cs.u0)},
              {"v0", to_json(cs.v0)}};
}

Json to_json(const SymTensorMatrix& t) {
  Json comps = Json::array();
  for (const auto& [idx, mat] : t.components)
    comps.push_back(Json{{"index", idx}, {"matrix", to_json(mat)}});
  return Json{{"rank", t.rank},
              {"dim_left", t.dim_left},
              {"dim_right", t.dim_right},
              {"fit_residual", t.fit_residual},
              {"fit_condition", t.fit_condition},
              {"components", std::move(comps)}};
}

Json to_json(const MatrixPolynomial& poly) {
  Json terms = Json::array();
  for (const auto& [exp, coeff] : poly.terms)
    terms.push_back(Json{{"exp", exp}, {"matrix", to_json(coeff)}});
  return Json{{"dims", Json::array({poly.dim_left, poly.dim_right})}, {"terms", std::move(terms)}};
}

Json to_json(const XiTable& xi) {
  Json entries = Json::array();
  for (const auto& [twice, value] : xi.xi)
    entries.push_back(Json{{"k", Json{{"twice", twice}}}, {"value", to_json(value)}});
  return Json{{"convention", xi.convention}, {"residual", xi.residual}, {"xi", std::move(entries)}};
}

Json to_json(const FieldEquationReport& rep) {
  return Json{{"rep_left", rep.rep_left},
              {"rep_right", rep.rep_right},
              {"j", to_json(rep.j)},
              {"m", rep.m},
              {"u_residual", rep.u_residual},
              {"v_residual", rep.v_residual},
              {"phases_cancel", rep.phases_cancel},
              {"degree_summary", rep.degree_summary},
              {"canonical_form", rep.canonical_form},
              {"rendering", rep.rendering},
              {"operator", to_json(rep.op)}};
}

Json to_json(const ProcaReport& rep) {
  return Json{{"m", rep.m},
              {"pi0_residual", rep.pi0_residual},
              {"transversality_residual", rep.transversality_residual},
              {"double_divergence_residual", rep.double_divergence_residual},
              {"rendering", rep.rendering},
              {"field_equation", to_json(rep.field_equation)}};
}

Json to_json(const StatisticsReport& rep) {
  return Json{{"A", to_json(rep.a)},
              {"B", to_json(rep.b)},
              {"j", to_json(rep.j)},
              {"required_sign", rep.required_sign},
              {"statistics", rep.statistics},
              {"kappa_lambda_constraint", rep.kappa_lambda_constraint}};
}

Json to_json(const CausalityEval& ev) {
  return Json{{"A", to_json(ev.a)},
              {"B", to_json(ev.b)},
              {"C", to_json(ev.c)},
              {"D", to_json(ev.d)},
              {"sign", ev.sign},
              {"p_coefficient", ev.p_coefficient},
              {"q_coefficient", ev.q_coefficient},
              {"ratio_consistent", ev.ratio_consistent},
              {"holds", ev.holds}};
}

HalfInt half_int_from_json(const Json& j) { return HalfInt::from_twice(j.at("twice").get<int>()); }

CMatrix cmatrix_from_json(const Json& j) {
  Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw std::invalid_argument("cmatrix_from_json: entry count mismatch");
  CMatrix m(rows, cols);
  Eigen::Index i = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c, ++i)
      m(r, c) = Complex(data[i][0].get<double>(), data[i][1].get<double>());
  return m;
}

SymTensorMatrix sym_tensor_from_json(const Json& j) {
  SymTensorMatrix t;
  t.rank = j.at("rank").get<int>();
  t.dim_left = j.at("dim_left").get<int>();
  t.dim_right = j.at("dim_right").get<int>();
  t.fit_residual = j.at("fit_residual").get<double>();
  t.fit_condition = j.at("fit_condition").get<double>();
  for (const auto& comp : j.at("components"))
    t.components[comp.at("index").get<MultiIndex>()] = cmatrix_from_json(comp.at("matrix"));
  return t;
}

}  // namespace abrep
