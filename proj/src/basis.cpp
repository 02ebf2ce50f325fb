#include "qdm/basis.hpp"

#include <algorithm>
#include <set>

#include "qdm/errors.hpp"

namespace qdm {

std::string_view to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::Dot3: return "dot3";
    case BasisKind::Dot4: return "dot4";
    case BasisKind::Qubit: return "qubit";
    case BasisKind::TwoQubit: return "two_qubit";
    case BasisKind::Effective6: return "effective6";
    case BasisKind::Effective8: return "effective8";
    case BasisKind::Dressed8: return "dressed8";
    case BasisKind::Full9: return "full9";
    case BasisKind::Full16: return "full16";
    case BasisKind::Symmetric9: return "symmetric9";
    case BasisKind::Symmetric16: return "symmetric16";
    case BasisKind::Custom: return "custom";
  }
  return "unknown";
}

ModelBasis::ModelBasis(BasisKind kind, std::vector<std::string> labels)
    : kind_(kind), labels_(std::move(labels)) {
  if (labels_.empty()) throw BasisError("basis must have at least one state");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw BasisError("basis labels must be unique");
}

ModelBasis ModelBasis::dot3() { return {BasisKind::Dot3, {"0", "1", "s"}}; }
ModelBasis ModelBasis::dot4() { return {BasisKind::Dot4, {"0", "1", "s", "t"}}; }
ModelBasis ModelBasis::qubit() { return {BasisKind::Qubit, {"0", "1"}}; }
ModelBasis ModelBasis::two_qubit() { return product_basis(qubit(), qubit()); }

ModelBasis ModelBasis::effective6() {
  return {BasisKind::Effective6, {"00", "S01", "A01", "11", "S0s", "S1s"}};
}

ModelBasis ModelBasis::effective8() {
  return {BasisKind::Effective8, {"00", "S01", "A01", "11", "S0s", "S1s", "S0t", "S1t"}};
}

ModelBasis ModelBasis::dressed8() {
  return {BasisKind::Dressed8, {"00", "S01", "A01", "11", "psi1", "psi3", "psi2", "psi4"}};
}

ModelBasis ModelBasis::full9() { return product_basis(dot3(), dot3()); }
ModelBasis ModelBasis::full16() { return product_basis(dot4(), dot4()); }

ModelBasis ModelBasis::symmetric9() {
  return {BasisKind::Symmetric9, {"00", "S01", "A01", "11", "S0s", "S1s", "A0s", "A1s", "ss"}};
}

ModelBasis ModelBasis::symmetric16() {
  return {BasisKind::Symmetric16,
          {"00", "S01", "A01", "11", "S0s", "S1s", "S0t", "S1t", "A0s", "A1s", "A0t", "A1t", "ss",
           "Sst", "Ast", "tt"}};
}

ModelBasis ModelBasis::custom(std::vector<std::string> labels) {
  return {BasisKind::Custom, std::move(labels)};
}

std::optional<Index> ModelBasis::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Index>(it - labels_.begin());
}

Index ModelBasis::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw BasisError("label '" + std::string(label) + "' not in " + std::string(to_string(kind_)) +
                   " basis");
}

ModelBasis product_basis(const ModelBasis& a, const ModelBasis& b) {
  if (a.kind() != b.kind())
    throw BasisError("tensor product of mismatched basis kinds " + std::string(to_string(a.kind())) +
                     " and " + std::string(to_string(b.kind())));
  BasisKind kind;
  switch (a.kind()) {
    case BasisKind::Dot3: kind = BasisKind::Full9; break;
    case BasisKind::Dot4: kind = BasisKind::Full16; break;
    case BasisKind::Qubit: kind = BasisKind::TwoQubit; break;
    case BasisKind::Custom: kind = BasisKind::Custom; break;
    default:
      throw BasisError("tensor product is only defined for single-dot bases, got " +
                       std::string(to_string(a.kind())));
  }
  std::vector<std::string> labels;
  labels.reserve(a.labels().size() * b.labels().size());
  for (const auto& x : a.labels())
    for (const auto& y : b.labels()) labels.push_back(x + y);
  return {kind, std::move(labels)};
}

}  // namespace qdm
