#pragma once

// JSON schemas. Rationals are written as "p/q" strings (or "p"); integers as
// JSON numbers when they fit in 64 bits, otherwise as decimal strings. Readers
// accept either form.

#include "qtdelta/delta.hpp"
#include "qtdelta/groups.hpp"
#include "qtdelta/polyhedral.hpp"
#include "qtdelta/symplectic.hpp"
#include "qtdelta/torus.hpp"

#include "json.hpp"

namespace qtdelta::io {

using nlohmann::json;

/// Malformed or ill-typed input document.
class SchemaError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

json to_json(const Rational& r);
json to_json(const Integer& z);
json to_json(const RatVector& v);
json to_json(const IntVector& v);
json to_json(const RatMatrix& m);
json to_json(const IntMatrix& m);

Rational rational_from(const json& j);
Integer integer_from(const json& j);
RatVector rat_vector_from(const json& j);
IntVector int_vector_from(const json& j);
/// `cols` is the expected width when the array is empty.
RatMatrix rat_matrix_from(const json& j, std::size_t cols);
IntMatrix int_matrix_from(const json& j, std::size_t cols);

json to_json(const Sublattice& l);
Sublattice sublattice_from(const json& j, std::size_t ambient);
json to_json(const Subspace& s);
Subspace subspace_from(const json& j, std::size_t ambient);

json to_json(const Cone& c);
Cone cone_from(const json& j);
json to_json(const Fan& f);
Fan fan_from(const json& j);

json to_json(const QTorusElement& e);
QTorusElement element_from(const json& j);
json to_json(const CocycleForm& c);
CocycleForm cocycle_from(const json& j);
json to_json(const AlternatingFormZ& f);
AlternatingFormZ alternating_z_from(const json& j);
json to_json(const AlternatingMapQ& f);
AlternatingMapQ alternating_q_from(const json& j);

/// {"relator": element, "cocycle": cocycle?}; a bare element is also accepted.
OneRelatorModule module_from(const json& j);
json to_json(const OneRelatorModule& m);

json to_json(const InitialForm& f);
json to_json(const FanComparison& c);
json to_json(const DimIdentityReport& r);
json to_json(const Theorem42Report& r);

json to_json(const SymplecticBase& b);
SymplecticBase base_from(const json& j, std::size_t n, std::size_t s);
json to_json(const BaseReport& r);
json to_json(const NoBaseFound& r);
json to_json(const AmpleReport& r);

json to_json(const Class2Presentation& p);
Class2Presentation presentation_from(const json& j);
json to_json(const StructureReport& r);

}  // namespace qtdelta::io
