#ifndef ABREP_SERIALIZE_HPP
#define ABREP_SERIALIZE_HPP

#include <json.hpp>

#include "abrep/field_physics.hpp"
#include "abrep/gamma_tensors.hpp"
#include "abrep/intertwiners.hpp"
#include "abrep/spin_sums.hpp"

namespace abrep {

/// Ordered JSON keeps key insertion order, so identical inputs serialize
/// to byte-identical reports.
using Json = nlohmann::ordered_json;

// Shared conventions: complex numbers as [re, im], half-integers as
// {"twice": n}, matrices as row-major entry lists.
Json to_json(const Complex& z);
Json to_json(HalfInt h);
Json to_json(const CMatrix& m);
Json to_json(const FourVector& p);
Json to_json(const LorentzWord& w);
Json to_json(const FieldRep& rep);  // name and label only
Json to_json(const CoefficientSet& cs);
Json to_json(const SymTensorMatrix& t);
Json to_json(const MatrixPolynomial& poly);
Json to_json(const XiTable& xi);
Json to_json(const FieldEquationReport& rep);
Json to_json(const ProcaReport& rep);
Json to_json(const StatisticsReport& rep);
Json to_json(const CausalityEval& ev);

HalfInt half_int_from_json(const Json& j);
CMatrix cmatrix_from_json(const Json& j);
SymTensorMatrix sym_tensor_from_json(const Json& j);

}  // namespace abrep

#endif
