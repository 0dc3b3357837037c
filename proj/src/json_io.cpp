#include "qtdelta/json_io.hpp"

namespace qtdelta::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw SchemaError(std::string("expected an object with key '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing key '") + key + "'");
    return *it;
}

const json& array_field(const json& j, const char* key) {
    const json& a = field(j, key);
    if (!a.is_array()) throw SchemaError(std::string("key '") + key + "' must be an array");
    return a;
}

std::size_t size_from(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw SchemaError(std::string("key '") + key + "' must be a nonnegative integer");
    return v.get<std::size_t>();
}

std::int64_t int64_from(const json& j) {
    Integer z = integer_from(j);
    if (!z.fits_slong_p()) throw SchemaError("exponent does not fit in 64 bits");
    return z.get_si();
}

Exponent exponent_from(const json& j, std::size_t len) {
    if (!j.is_array() || j.size() != len) throw SchemaError("exponent vector has wrong length");
    Exponent e;
    for (const auto& x : j) e.push_back(int64_from(x));
    return e;
}

json exponent_json(const Exponent& e) {
    json a = json::array();
    for (auto x : e) a.push_back(x);
    return a;
}

}  // namespace

json to_json(const Rational& r) { return to_string(r); }

json to_json(const Integer& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

json to_json(const RatVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

json to_json(const IntVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

json to_json(const RatMatrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
    return a;
}

json to_json(const IntMatrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
    return a;
}

Rational rational_from(const json& j) {
    if (j.is_number_integer()) return Rational(Integer(static_cast<long>(j.get<std::int64_t>())));
    if (j.is_number_unsigned()) return Rational(Integer(std::to_string(j.get<std::uint64_t>())));
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw SchemaError(e.what());
        }
    }
    throw SchemaError("expected an exact rational (integer or \"p/q\" string), got " + j.dump());
}

Integer integer_from(const json& j) {
    Rational r = rational_from(j);
    if (r.get_den() != 1) throw SchemaError("expected an integer, got " + j.dump());
    return r.get_num();
}

RatVector rat_vector_from(const json& j) {
    if (!j.is_array()) throw SchemaError("expected an array of rationals");
    RatVector v;
    for (const auto& x : j) v.push_back(rational_from(x));
    return v;
}

IntVector int_vector_from(const json& j) {
    if (!j.is_array()) throw SchemaError("expected an array of integers");
    IntVector v;
    for (const auto& x : j) v.push_back(integer_from(x));
    return v;
}

RatMatrix rat_matrix_from(const json& j, std::size_t cols) {
    if (!j.is_array()) throw SchemaError("expected a matrix (array of rows)");
    RatMatrix m(0, cols);
    for (const auto& row : j) {
        RatVector r = rat_vector_from(row);
        if (r.size() != cols) throw SchemaError("matrix row has length " + std::to_string(r.size()) +
                                                ", expected " + std::to_string(cols));
        m.append_row(r);
    }
    return m;
}

IntMatrix int_matrix_from(const json& j, std::size_t cols) {
    if (!j.is_array()) throw SchemaError("expected a matrix (array of rows)");
    IntMatrix m(0, cols);
    for (const auto& row : j) {
        IntVector r = int_vector_from(row);
        if (r.size() != cols) throw SchemaError("matrix row has length " + std::to_string(r.size()) +
                                                ", expected " + std::to_string(cols));
        m.append_row(r);
    }
    return m;
}

json to_json(const Sublattice& l) { return {{"ambient", l.ambient_rank()}, {"basis", to_json(l.basis())}}; }

Sublattice sublattice_from(const json& j, std::size_t ambient) {
    const json& rows = j.is_object() ? field(j, "basis") : j;
    return Sublattice(ambient, int_matrix_from(rows, ambient));
}

json to_json(const Subspace& s) { return {{"ambient", s.ambient_dim()}, {"basis", to_json(s.basis())}}; }

Subspace subspace_from(const json& j, std::size_t ambient) {
    const json& rows = j.is_object() ? field(j, "basis") : j;
    return Subspace(ambient, rat_matrix_from(rows, ambient));
}

// ---------------------------------------------------------------------------

json to_json(const Cone& c) {
    json eq = json::array(), ineq = json::array(), rays = json::array(), lin = json::array();
    for (const auto& v : c.equalities()) eq.push_back(to_json(v));
    for (const auto& v : c.inequalities()) ineq.push_back(to_json(v));
    for (const auto& v : c.rays()) rays.push_back(to_json(v));
    for (const auto& v : c.lineality()) lin.push_back(to_json(v));
    return {{"dim", c.ambient_dim()}, {"eq", eq}, {"ineq", ineq}, {"rays", rays}, {"lineality", lin}};
}

Cone cone_from(const json& j) {
    const std::size_t d = size_from(j, "dim");
    std::vector<RatVector> eq, ineq;
    if (j.contains("eq")) eq = rat_matrix_from(j["eq"], d).to_rows();
    if (j.contains("ineq")) ineq = rat_matrix_from(j["ineq"], d).to_rows();
    return Cone(d, eq, ineq);
}

json to_json(const Fan& f) {
    json cones = json::array();
    for (const auto& c : f.cones()) cones.push_back(to_json(c));
    return {{"dim", f.ambient_dim()}, {"cones", cones}};
}

Fan fan_from(const json& j) {
    const std::size_t d = size_from(j, "dim");
    std::vector<Cone> cones;
    for (const auto& c : array_field(j, "cones")) {
        Cone cone = cone_from(c);
        if (cone.ambient_dim() != d) throw SchemaError("cone dimension differs from fan dimension");
        cones.push_back(std::move(cone));
    }
    return Fan(d, std::move(cones));
}

// ---------------------------------------------------------------------------

json to_json(const QTorusElement& e) {
    json terms = json::array();
    for (const auto& [a, coeff] : e.terms()) {
        json cs = json::array();
        for (const auto& [q, c] : coeff) cs.push_back({{"qexp", exponent_json(q)}, {"c", to_json(c)}});
        terms.push_back({{"exp", exponent_json(a)}, {"coeff", cs}});
    }
    return {{"rank", e.rank()}, {"params", e.params()}, {"terms", terms}};
}

QTorusElement element_from(const json& j) {
    const std::size_t n = size_from(j, "rank");
    const json& terms = array_field(j, "terms");
    std::size_t s = 0;
    if (j.contains("params")) {
        s = size_from(j, "params");
    } else {
        for (const auto& t : terms)
            if (t.contains("coeff") && t["coeff"].is_array() && !t["coeff"].empty() &&
                t["coeff"][0].contains("qexp"))
                s = t["coeff"][0]["qexp"].size();
    }
    QTorusElement e(n, s);
    for (const auto& t : terms) {
        Exponent a = exponent_from(field(t, "exp"), n);
        const json& coeff = field(t, "coeff");
        if (!coeff.is_array()) {
            e.add_term(a, Exponent(s, 0), rational_from(coeff));
            continue;
        }
        for (const auto& c : coeff) e.add_term(a, exponent_from(field(c, "qexp"), s), rational_from(field(c, "c")));
    }
    return e;
}

json to_json(const CocycleForm& c) {
    json b = json::array();
    for (const auto& m : c.B) b.push_back(to_json(m));
    return {{"rank", c.rank}, {"s", c.params}, {"B", b}};
}

CocycleForm cocycle_from(const json& j) {
    const std::size_t n = size_from(j, "rank");
    const std::size_t s = size_from(j, "s");
    std::vector<IntMatrix> forms;
    for (const auto& m : array_field(j, "B")) forms.push_back(int_matrix_from(m, n));
    if (forms.size() != s) throw SchemaError("cocycle needs exactly s matrices");
    for (const auto& m : forms)
        if (m.rows() != n) throw SchemaError("cocycle matrices must be rank x rank");
    return CocycleForm(n, s, std::move(forms));
}

json to_json(const AlternatingFormZ& f) {
    json phi = json::array();
    for (const auto& m : f.phi) phi.push_back(to_json(m));
    return {{"n", f.rank}, {"s", f.params}, {"phi", phi}};
}

AlternatingFormZ alternating_z_from(const json& j) {
    const std::size_t n = size_from(j, "n");
    const std::size_t s = size_from(j, "s");
    std::vector<IntMatrix> forms;
    for (const auto& m : array_field(j, "phi")) forms.push_back(int_matrix_from(m, n));
    if (forms.size() != s) throw SchemaError("form needs exactly s matrices");
    for (const auto& m : forms)
        if (m.rows() != n) throw SchemaError("form matrices must be n x n");
    return AlternatingFormZ(n, s, std::move(forms));
}

json to_json(const AlternatingMapQ& f) {
    json phi = json::array();
    for (const auto& m : f.phi) phi.push_back(to_json(m));
    return {{"n", f.n}, {"s", f.s}, {"phi", phi}};
}

AlternatingMapQ alternating_q_from(const json& j) {
    const std::size_t n = size_from(j, "n");
    const std::size_t s = size_from(j, "s");
    std::vector<RatMatrix> forms;
    for (const auto& m : array_field(j, "phi")) forms.push_back(rat_matrix_from(m, n));
    if (forms.size() != s) throw SchemaError("form needs exactly s matrices");
    for (const auto& m : forms)
        if (m.rows() != n) throw SchemaError("form matrices must be n x n");
    return AlternatingMapQ(n, s, std::move(forms));
}

OneRelatorModule module_from(const json& j) {
    if (!j.is_object()) throw SchemaError("expected a module object");
    if (!j.contains("relator")) return OneRelatorModule(element_from(j));
    QTorusElement r = element_from(j["relator"]);
    if (!j.contains("cocycle")) return OneRelatorModule(std::move(r));
    return OneRelatorModule(std::move(r), cocycle_from(j["cocycle"]));
}

json to_json(const OneRelatorModule& m) { return {{"relator", to_json(m.relator)}, {"cocycle", to_json(m.cocycle)}}; }

// ---------------------------------------------------------------------------

json to_json(const InitialForm& f) {
    return {{"relator", to_json(f.relator)},
            {"B", to_json(f.kernel)},
            {"cocycle", to_json(f.cocycle)},
            {"shift", exponent_json(f.shift)}};
}

json to_json(const FanComparison& c) {
    return {{"lhs", to_json(c.lhs)},
            {"rhs", to_json(c.rhs)},
            {"equal", c.equal},
            {"witness", c.witness ? to_json(*c.witness) : json(nullptr)}};
}

json to_json(const DimIdentityReport& r) {
    return {{"character_rank", r.character_rank}, {"tc_dim", r.tc_dim}, {"delta_dim", r.delta_dim}, {"holds", r.holds}};
}

json to_json(const Theorem42Report& r) {
    json images = json::array();
    for (const auto& l : r.images) images.push_back(to_json(l));
    return {{"commuting_parts", r.commuting_parts},
            {"trivial_centres", r.trivial_centres},
            {"cyclic_images", r.cyclic_images},
            {"noncommensurable", r.noncommensurable},
            {"finite_index", r.finite_index},
            {"images", images},
            {"passed", r.passed()}};
}

json to_json(const SymplecticBase& b) {
    json blocks = json::array(), lines = json::array();
    for (const auto& v : b.blocks) blocks.push_back(to_json(v.basis()));
    for (const auto& w : b.lines) lines.push_back(to_json(w));
    return {{"V0", to_json(b.v0.basis())}, {"blocks", blocks}, {"lines", lines}};
}

SymplecticBase base_from(const json& j, std::size_t n, std::size_t s) {
    SymplecticBase b{subspace_from(field(j, "V0"), n), {}, {}};
    for (const auto& v : array_field(j, "blocks")) b.blocks.push_back(subspace_from(v, n));
    for (const auto& w : array_field(j, "lines")) {
        RatVector line = rat_vector_from(w);
        if (line.size() != s) throw SchemaError("line has wrong length");
        b.lines.push_back(std::move(line));
    }
    return b;
}

json to_json(const BaseReport& r) {
    return {{"direct_sum", r.direct_sum},   {"center", r.center_ok},
            {"orthogonal", r.orthogonal},   {"blocks", r.blocks_ok},
            {"distinct_lines", r.distinct_lines}, {"lines_match", r.lines_match},
            {"failures", r.failures},       {"passed", r.passed()}};
}

json to_json(const NoBaseFound& r) {
    return {{"no_base_found", true},
            {"attempts", r.attempts},
            {"reason", r.reason},
            {"last_report", r.last_report ? to_json(*r.last_report) : json(nullptr)}};
}

json to_json(const AmpleReport& r) {
    json probes = json::array();
    for (const auto& p : r.probes) probes.push_back(to_json(p.basis()));
    return {{"m", r.m},
            {"dim_x", r.dim_x},
            {"dim_center", r.dim_center},
            {"dim_condition", r.dim_condition},
            {"cond1_applicable", r.cond1_applicable},
            {"cond1", r.cond1},
            {"cond2", r.cond2},
            {"probes", probes},
            {"failures", r.failures},
            {"passed", r.passed()}};
}

json to_json(const Class2Presentation& p) {
    json comms = json::array();
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = a + 1; b < p.size(); ++b)
            if (!is_zero(p.commutator(a, b)))
                comms.push_back({{"a", p.generators()[a]}, {"b", p.generators()[b]}, {"exps", to_json(p.commutator(a, b))}});
    return {{"generators", p.generators()}, {"central", p.central()}, {"commutators", comms}};
}

Class2Presentation presentation_from(const json& j) {
    std::vector<std::string> gens, central;
    for (const auto& g : array_field(j, "generators")) {
        if (!g.is_string()) throw SchemaError("generator names must be strings");
        gens.push_back(g.get<std::string>());
    }
    for (const auto& z : array_field(j, "central")) {
        if (!z.is_string()) throw SchemaError("central generator names must be strings");
        central.push_back(z.get<std::string>());
    }
    Class2Presentation p(gens, central);
    std::vector<std::vector<bool>> seen(p.size(), std::vector<bool>(p.size(), false));
    auto index_of = [&](const json& x) -> std::size_t {
        if (x.is_string()) {
            try {
                return p.generator_index(x.get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw SchemaError(e.what());
            }
        }
        if (x.is_number_unsigned() || (x.is_number_integer() && x.get<std::int64_t>() >= 0)) {
            auto i = x.get<std::size_t>();
            if (i >= p.size()) throw SchemaError("generator index out of range");
            return i;
        }
        throw SchemaError("generator reference must be a name or an index");
    };
    if (j.contains("commutators")) {
        for (const auto& c : array_field(j, "commutators")) {
            std::size_t a = index_of(field(c, "a")), b = index_of(field(c, "b"));
            IntVector exps = int_vector_from(field(c, "exps"));
            if (exps.size() != p.central_size()) throw SchemaError("commutator exponents have wrong length");
            if (a == b && !is_zero(exps)) throw SchemaError("[g, g] must be trivial");
            if (seen[a][b]) {
                if (p.commutator(a, b) != exps) throw SchemaError("conflicting commutator entries");
                continue;
            }
            p.set_commutator(a, b, exps);
            seen[a][b] = seen[b][a] = true;
        }
    }
    return p;
}

json to_json(const StructureReport& r) {
    json blocks = json::array();
    for (const auto& b : r.heisenberg_blocks)
        blocks.push_back({{"rank", b.rank},
                          {"basis", to_json(b.lattice.basis())},
                          {"span", to_json(b.span.basis())},
                          {"line", to_json(b.line)}});
    return {{"heisenberg_blocks", blocks},
            {"cyclic_rank", r.cyclic_rank},
            {"cyclic_basis", to_json(r.cyclic_lattice.basis())},
            {"decomposed", r.decomposed},
            {"finite_index", r.finite_index},
            {"theorem42", r.theorem42 ? to_json(*r.theorem42) : json(nullptr)},
            {"diagnostics", r.diagnostics}};
}

}  // namespace qtdelta::io
