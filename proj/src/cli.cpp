#include "qtdelta/cli.hpp"

#include "qtdelta/json_io.hpp"
#include "qtdelta/random_instances.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace qtdelta::cli {

using io::json;

namespace {

struct Options {
    std::string command;
    std::string input;
    std::string output;
    std::string format = "json";
    std::uint64_t seed = 0;
    std::optional<std::size_t> sample;
    std::size_t retries = 8;
};

struct Outcome {
    json doc;
    int code = kOk;
};

struct Command {
    std::string name;
    std::string help;
    bool samples = false;
    std::function<Outcome(const Options&, const std::optional<json>&)> handler;
};

// Input document member, or the document itself when the key is absent.
const json& part(const json& j, const char* key) {
    if (j.is_object() && j.contains(key)) return j.at(key);
    return j;
}

const json& required(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw io::SchemaError(std::string("missing key '") + key + "'");
    return j.at(key);
}

const json& need_input(const std::optional<json>& in) {
    if (!in) throw io::SchemaError("this subcommand needs an input document");
    return *in;
}

Character character_from(const json& j, std::size_t rank) {
    Character chi = io::rat_vector_from(required(j, "chi"));
    if (chi.size() != rank) throw io::SchemaError("chi has the wrong length");
    return chi;
}

AlternatingMapQ rational_form_from(const json& j) {
    const json& f = part(j, "form");
    return io::alternating_q_from(f);
}

AlternatingFormZ integral_form_from(const json& j) {
    const json& f = part(j, "form");
    if (f.is_object() && f.contains("B")) return commutator_form(io::cocycle_from(f));
    if (f.is_object() && f.contains("generators")) return commutator_form(io::presentation_from(f));
    return io::alternating_z_from(f);
}

std::vector<Subspace> subspace_list(const json& j, std::size_t n) {
    if (!j.is_array()) throw io::SchemaError("expected an array of subspaces");
    std::vector<Subspace> out;
    for (const auto& s : j) out.push_back(io::subspace_from(s, n));
    return out;
}

OneRelatorModule random_instance(Rng rng) {
    RelatorShape shape;
    shape.rank = static_cast<std::size_t>(rng.uniform(2, 4));
    shape.params = static_cast<std::size_t>(rng.uniform(1, 2));
    return random_module(rng, shape);
}

// Module for sample i: the input module when one is given, otherwise random.
OneRelatorModule sample_module(const Options& opt, const std::optional<json>& in, std::size_t i) {
    if (in) return io::module_from(part(*in, "module"));
    return random_instance(Rng(opt.seed).split(opt.command).split(i));
}

// Runs `check` on samples 0..N-1. A check returns nullopt on success, a
// failure record otherwise, or the string "skip" when the sample is unusable.
Outcome sampled(const Options& opt, const std::function<std::optional<json>(std::size_t)>& check) {
    json failures = json::array();
    const std::size_t n = *opt.sample;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto f = check(i);
        if (!f) continue;
        if (f->is_string()) ++skipped;
        else failures.push_back(std::move(*f));
    }
    const bool ok = failures.empty();
    return {{{"instances", n}, {"skipped", skipped}, {"failures", failures}, {"passed", ok}}, ok ? kOk : kViolation};
}

Outcome cmd_delta(const Options&, const std::optional<json>& in) {
    return {io::to_json(delta_set(io::module_from(part(need_input(in), "module")))), kOk};
}

Outcome cmd_initform(const Options&, const std::optional<json>& in) {
    const json& j = need_input(in);
    OneRelatorModule m = io::module_from(part(j, "module"));
    return {io::to_json(initial_form(m, character_from(j, m.rank()))), kOk};
}

Outcome cmd_tc(const Options&, const std::optional<json>& in) {
    const json& j = need_input(in);
    OneRelatorModule m = io::module_from(part(j, "module"));
    Character chi = character_from(j, m.rank());
    InitialForm f = initial_form(m, chi);
    return {{{"kernel", io::to_json(f.kernel)}, {"fan", io::to_json(tc_delta(m, chi))}}, kOk};
}

Outcome cmd_lc(const Options&, const std::optional<json>& in) {
    const json& j = need_input(in);
    Fan f = io::fan_from(required(j, "fan"));
    RatVector x = io::rat_vector_from(required(j, "point"));
    if (x.size() != f.ambient_dim()) throw io::SchemaError("point has the wrong length");
    return {io::to_json(local_cone(f, x)), kOk};
}

json instance_json(const OneRelatorModule& m, const Character& chi) {
    return {{"module", io::to_json(m)}, {"chi", io::to_json(chi)}};
}

// χ from a Δ-cone (nullopt when Δ is empty) or from the rational grid.
std::optional<Character> sample_character(const OneRelatorModule& m, const Options& opt, std::size_t i, bool on_delta) {
    if (on_delta) {
        const std::size_t cones = delta_set(m).cones().size();
        if (cones == 0) return std::nullopt;
        Rng pick = Rng(opt.seed).split("cone").split(i);
        auto c = static_cast<std::size_t>(pick.uniform(0, static_cast<std::int64_t>(cones) - 1));
        return sample_delta_point(m, c, opt.seed ^ i);
    }
    Rng rng = Rng(opt.seed).split("grid").split(i);
    return random_grid_character(rng, m.rank());
}

Outcome cmd_local_cone_identity(const Options& opt, const std::optional<json>& in) {
    if (!opt.sample) {
        const json& j = need_input(in);
        OneRelatorModule m = io::module_from(part(j, "module"));
        FanComparison c = check_lemma31(m, character_from(j, m.rank()));
        return {io::to_json(c), c.equal ? kOk : kViolation};
    }
    return sampled(opt, [&](std::size_t i) -> std::optional<json> {
        OneRelatorModule m = sample_module(opt, in, i);
        // Even samples take χ from a Δ-cone when there is one.
        auto drawn = sample_character(m, opt, i, i % 2 == 0);
        if (!drawn) drawn = sample_character(m, opt, i, false);
        const Character chi = *drawn;
        FanComparison c = check_lemma31(m, chi);
        if (c.equal) return std::nullopt;
        json f = instance_json(m, chi);
        f["comparison"] = io::to_json(c);
        return f;
    });
}

Outcome cmd_dim(const Options& opt, const std::optional<json>& in) {
    if (!opt.sample) {
        const json& j = need_input(in);
        OneRelatorModule m = io::module_from(part(j, "module"));
        DimIdentityReport r = check_dim_identity(m, character_from(j, m.rank()));
        return {io::to_json(r), r.holds ? kOk : kViolation};
    }
    return sampled(opt, [&](std::size_t i) -> std::optional<json> {
        OneRelatorModule m = sample_module(opt, in, i);
        auto drawn = sample_character(m, opt, i, true);
        if (!drawn) return json("skip");
        const Character chi = *drawn;
        DimIdentityReport r = check_dim_identity(m, chi);
        if (r.holds) return std::nullopt;
        json f = instance_json(m, chi);
        f["report"] = io::to_json(r);
        return f;
    });
}

Outcome cmd_induced(const Options& opt, const std::optional<json>& in) {
    if (!opt.sample) {
        const json& j = need_input(in);
        OneRelatorModule m = io::module_from(part(j, "module"));
        Sublattice a1 = io::sublattice_from(required(j, "a1"), m.rank());
        FanComparison c = check_induced(m, a1, character_from(j, m.rank()));
        return {io::to_json(c), c.equal ? kOk : kViolation};
    }
    if (in) throw io::SchemaError("check-induced --sample generates its own instances; omit --input");
    return sampled(opt, [&](std::size_t i) -> std::optional<json> {
        Rng rng = Rng(opt.seed).split(opt.command).split(i);
        const auto n = static_cast<std::size_t>(rng.uniform(2, 4));
        const auto k = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(std::min<std::size_t>(3, n))));
        const auto s = static_cast<std::size_t>(rng.uniform(1, 2));
        Sublattice a1 = random_saturated_sublattice(rng, n, k);
        OneRelatorModule m(random_relator_in(rng, a1, s, 6), random_cocycle(rng, n, s));
        Character chi = random_grid_character(rng, n);
        FanComparison c = check_induced(m, a1, chi);
        if (c.equal) return std::nullopt;
        json f = instance_json(m, chi);
        f["a1"] = io::to_json(a1);
        f["comparison"] = io::to_json(c);
        return f;
    });
}

Outcome cmd_torus_mul(const Options&, const std::optional<json>& in) {
    const json& j = need_input(in);
    QTorusElement a = io::element_from(required(j, "a"));
    QTorusElement b = io::element_from(required(j, "b"));
    CocycleForm c = j.contains("cocycle") ? io::cocycle_from(j.at("cocycle")) : CocycleForm::trivial(a.rank(), a.params());
    return {io::to_json(multiply(a, b, c)), kOk};
}

Outcome cmd_center(const Options&, const std::optional<json>& in) {
    AlternatingFormZ f = integral_form_from(need_input(in));
    Sublattice z = center_lattice(f);
    return {{{"center", io::to_json(z)}, {"rank", z.rank()}, {"commutative", z.rank() == f.rank}}, kOk};
}

Outcome cmd_symbase(const Options& opt, const std::optional<json>& in) {
    AlternatingMapQ phi = rational_form_from(need_input(in));
    BaseResult r = compute_symplectic_base(phi, opt.seed, opt.retries);
    if (auto* b = std::get_if<SymplecticBase>(&r)) return {io::to_json(*b), kOk};
    return {io::to_json(std::get<NoBaseFound>(r)), kViolation};
}

Outcome cmd_verify_base(const Options&, const std::optional<json>& in) {
    const json& j = need_input(in);
    AlternatingMapQ phi = rational_form_from(j);
    SymplecticBase base = io::base_from(required(j, "base"), phi.n, phi.s);
    BaseReport r = verify_symplectic_base(phi, base);
    return {io::to_json(r), r.passed() ? kOk : kViolation};
}

Outcome cmd_abelian_split(const Options& opt, const std::optional<json>& in) {
    const json& j = need_input(in);
    AlternatingMapQ phi = rational_form_from(j);
    Subspace u = io::subspace_from(required(j, "U"), phi.n);
    std::optional<SymplecticBase> base;
    if (j.contains("base")) {
        base = io::base_from(j.at("base"), phi.n, phi.s);
    } else {
        BaseResult r = compute_symplectic_base(phi, opt.seed, opt.retries);
        if (auto* nb = std::get_if<NoBaseFound>(&r)) return {io::to_json(*nb), kViolation};
        base = std::get<SymplecticBase>(r);
    }
    json parts = json::array();
    for (const auto& c : decompose_abelian(phi, *base, u)) parts.push_back(io::to_json(c.basis()));
    return {{{"base", io::to_json(*base)}, {"components", parts}}, kOk};
}

Outcome cmd_ample(const Options& opt, const std::optional<json>& in) {
    const json& j = need_input(in);
    AlternatingMapQ phi = rational_form_from(j);
    Subspace x = io::subspace_from(required(j, "X"), phi.n);
    std::vector<Subspace> omega = j.contains("omega") ? subspace_list(j.at("omega"), phi.n) : std::vector<Subspace>{};
    std::optional<std::vector<Subspace>> probes;
    if (j.contains("probes")) probes = subspace_list(j.at("probes"), phi.n);
    AmpleReport r = check_ample(phi, x, omega, probes, opt.seed);
    return {io::to_json(r), r.passed() ? kOk : kViolation};
}

Outcome cmd_group_structure(const Options& opt, const std::optional<json>& in) {
    StructureReport r = structure_report(io::presentation_from(part(need_input(in), "presentation")), opt.seed, opt.retries);
    return {io::to_json(r), r.decomposed ? kOk : kViolation};
}

Outcome cmd_thm42(const Options&, const std::optional<json>& in) {
    const json& j = need_input(in);
    AlternatingFormZ f = integral_form_from(j);
    std::vector<Sublattice> parts;
    const json& ps = required(j, "parts");
    if (!ps.is_array()) throw io::SchemaError("'parts' must be an array of lattice bases");
    for (const auto& p : ps) parts.push_back(io::sublattice_from(p, f.rank));
    Theorem42Report r = verify_theorem42(f, parts);
    return {io::to_json(r), r.passed() ? kOk : kViolation};
}

const std::vector<Command>& commands() {
    static const std::vector<Command> table = {
        {"delta", "Δ-set of a one-relator module as a fan", false, cmd_delta},
        {"initform", "initial form r_χ and the kernel lattice of χ", false, cmd_initform},
        {"tc", "Δ-set of the trailing coefficient module, in kernel coordinates", false, cmd_tc},
        {"lc", "local cone of a fan at a point", false, cmd_lc},
        {"check-lemma31", "local cone of Δ against the pullback of Δ(TC_χ)", true, cmd_local_cone_identity},
        {"check-dim", "rank(χ) + dim Δ(TC_χ) = dim Δ", true, cmd_dim},
        {"check-induced", "induced-module law for a saturated sublattice", true, cmd_induced},
        {"torus-mul", "product of two quantum torus elements", false, cmd_torus_mul},
        {"center", "centre lattice of a commutator form", false, cmd_center},
        {"symbase", "symplectic base of an alternating map", false, cmd_symbase},
        {"verify-base", "audit a candidate symplectic base", false, cmd_verify_base},
        {"abelian-split", "split an abelian subspace along a symplectic base", false, cmd_abelian_split},
        {"check-ample", "ample abelian subspace conditions", false, cmd_ample},
        {"group-structure", "Heisenberg and cyclic factors of a class-2 presentation", false, cmd_group_structure},
        {"verify-thm42", "audit a lattice decomposition of a commutator form", false, cmd_thm42},
    };
    return table;
}

void flatten(const json& j, const std::string& path, std::ostream& out) {
    if (j.is_object()) {
        if (j.empty()) out << path << ": {}\n";
        for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
    } else if (j.is_array()) {
        bool scalars = true;
        for (const auto& v : j) scalars = scalars && !v.is_structured();
        if (scalars) {
            out << path << ": [";
            for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
            out << "]\n";
            return;
        }
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

std::string render(const json& doc, const std::string& format) {
    if (format == "pretty") {
        std::ostringstream s;
        flatten(doc, "", s);
        return s.str();
    }
    return doc.dump(2) + "\n";
}

std::optional<json> read_input(const Options& opt, bool samples, std::istream& in) {
    if (opt.input.empty() && samples && opt.sample) return std::nullopt;
    std::string text;
    if (opt.input.empty() || opt.input == "-") {
        std::ostringstream s;
        s << in.rdbuf();
        text = s.str();
    } else {
        std::ifstream f(opt.input, std::ios::binary);
        if (!f) throw io::SchemaError("cannot open input file '" + opt.input + "'");
        std::ostringstream s;
        s << f.rdbuf();
        text = s.str();
    }
    return json::parse(text);
}

}  // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& c : commands()) v.push_back(c.name);
        return v;
    }();
    return names;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Options opt;
    std::size_t sample = 0;
    CLI::App app{"Exact Δ-set, local cone and symplectic base computations", "qtdelta"};
    app.require_subcommand(1, 1);
    std::map<std::string, CLI::App*> subs;
    for (const auto& c : commands()) {
        CLI::App* s = app.add_subcommand(c.name, c.help);
        s->add_option("--input,-i", opt.input, "input JSON file (default: stdin)");
        s->add_option("--output,-o", opt.output, "output file (default: stdout)");
        s->add_option("--seed", opt.seed, "seed for all randomized steps")->capture_default_str();
        s->add_option("--format", opt.format, "json or pretty")->check(CLI::IsMember({"json", "pretty"}))->capture_default_str();
        s->add_option("--retries", opt.retries, "random draws before giving up on a symplectic base")->capture_default_str();
        if (c.samples) s->add_option("--sample", sample, "number of random instances to check")->check(CLI::PositiveNumber);
        subs[c.name] = s;
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    const Command* cmd = nullptr;
    for (const auto& c : commands())
        if (subs[c.name]->parsed()) cmd = &c;
    opt.command = cmd->name;
    if (cmd->samples && subs[cmd->name]->count("--sample")) opt.sample = sample;

    Outcome result;
    try {
        result = cmd->handler(opt, read_input(opt, cmd->samples, in));
    } catch (const json::parse_error& e) {
        err << "error: malformed JSON at byte " << e.byte << ": " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    const std::string text = render(result.doc, opt.format);
    if (opt.output.empty() || opt.output == "-") {
        out << text;
    } else {
        std::ofstream f(opt.output, std::ios::binary);
        if (!f) {
            err << "error: cannot write '" << opt.output << "'\n";
            return kInputError;
        }
        f << text;
    }
    return result.code;
}

}  // namespace qtdelta::cli
