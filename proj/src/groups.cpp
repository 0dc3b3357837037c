#include "qtdelta/groups.hpp"

#include <algorithm>
#include <stdexcept>
#include <variant>

namespace qtdelta {

Class2Presentation::Class2Presentation(std::vector<std::string> generators, std::vector<std::string> central)
    : generators_(std::move(generators)), central_(std::move(central)) {
    table_.assign(generators_.size(), std::vector<IntVector>(generators_.size(), IntVector(central_.size())));
}

void Class2Presentation::set_commutator(std::size_t a, std::size_t b, const IntVector& exps) {
    if (a >= size() || b >= size()) throw std::out_of_range("generator index out of range");
    if (exps.size() != central_size()) throw DimensionError("commutator exponent vector has wrong length");
    if (a == b) {
        if (!is_zero(exps)) throw std::invalid_argument("[g, g] must be trivial");
        return;
    }
    table_[a][b] = exps;
    IntVector inv = exps;
    for (auto& x : inv) x = -x;
    table_[b][a] = std::move(inv);
}

const IntVector& Class2Presentation::commutator(std::size_t a, std::size_t b) const { return table_.at(a).at(b); }

std::size_t Class2Presentation::generator_index(const std::string& name) const {
    auto it = std::find(generators_.begin(), generators_.end(), name);
    if (it == generators_.end()) throw std::invalid_argument("unknown generator '" + name + "'");
    return static_cast<std::size_t>(it - generators_.begin());
}

Class2Presentation heisenberg(std::size_t m) {
    if (m < 1) throw std::invalid_argument("Heisenberg rank must be at least 1");
    std::vector<std::string> gens;
    for (std::size_t i = 1; i <= m; ++i) gens.push_back("x" + std::to_string(i));
    for (std::size_t i = 1; i <= m; ++i) gens.push_back("y" + std::to_string(i));
    Class2Presentation p(std::move(gens), {"z"});
    for (std::size_t i = 0; i < m; ++i) p.set_commutator(i, m + i, IntVector{1});
    return p;
}

Class2Presentation with_cyclic(const Class2Presentation& p, std::size_t count) {
    std::vector<std::string> gens = p.generators();
    for (std::size_t i = 1; i <= count; ++i) gens.push_back("c" + std::to_string(i));
    Class2Presentation out(std::move(gens), p.central());
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = a + 1; b < p.size(); ++b) out.set_commutator(a, b, p.commutator(a, b));
    return out;
}

Class2Presentation central_product(const std::vector<Class2Presentation>& factors, bool shared_center) {
    std::vector<std::string> gens, central;
    for (std::size_t f = 0; f < factors.size(); ++f) {
        const std::string tag = "_" + std::to_string(f + 1);
        for (const auto& g : factors[f].generators()) gens.push_back(g + tag);
        if (shared_center) {
            if (f == 0) central = factors[f].central();
            else if (factors[f].central_size() != central.size())
                throw std::invalid_argument("shared centre requires equal central ranks");
        } else {
            for (const auto& z : factors[f].central()) central.push_back(z + tag);
        }
    }
    Class2Presentation out(std::move(gens), central);
    std::size_t gen_offset = 0, central_offset = 0;
    for (const auto& f : factors) {
        for (std::size_t a = 0; a < f.size(); ++a)
            for (std::size_t b = a + 1; b < f.size(); ++b) {
                IntVector v(out.central_size());
                for (std::size_t k = 0; k < f.central_size(); ++k) v[central_offset + k] = f.commutator(a, b)[k];
                out.set_commutator(gen_offset + a, gen_offset + b, v);
            }
        gen_offset += f.size();
        if (!shared_center) central_offset += f.central_size();
    }
    return out;
}

AlternatingFormZ commutator_form(const Class2Presentation& p) {
    std::vector<IntMatrix> forms(p.central_size(), IntMatrix(p.size(), p.size()));
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = 0; b < p.size(); ++b)
            for (std::size_t k = 0; k < p.central_size(); ++k) forms[k](a, b) = p.commutator(a, b)[k];
    return AlternatingFormZ(p.size(), p.central_size(), std::move(forms));
}

StructureReport structure_report(const Class2Presentation& p, std::uint64_t seed, std::size_t retries) {
    const AlternatingFormZ form = commutator_form(p);
    const AlternatingMapQ phi = AlternatingMapQ::from_integral(form);

    StructureReport r;
    r.cyclic_lattice = center_lattice(form);
    r.cyclic_rank = r.cyclic_lattice.rank();

    BaseResult result = compute_symplectic_base(phi, seed, retries);
    if (const auto* failed = std::get_if<NoBaseFound>(&result)) {
        r.decomposed = false;
        r.diagnostics.push_back("no symplectic base after " + std::to_string(failed->attempts) +
                                " attempts: " + failed->reason);
        if (failed->last_report)
            for (const auto& f : failed->last_report->failures) r.diagnostics.push_back(f);
        return r;
    }
    const auto& base = std::get<SymplecticBase>(result);

    std::vector<Sublattice> parts;
    Sublattice total = r.cyclic_lattice;
    for (const auto& block : base.blocks) {
        HeisenbergFactor f;
        f.rank = block.dim() / 2;
        f.span = block;
        f.lattice = integer_points(block);
        Sublattice image = saturate(cocycle_image(form, f.lattice));
        f.line = image.rank() == 1 ? image.basis().row(0) : IntVector(form.params);
        total = lattice_sum(total, f.lattice);
        parts.push_back(f.lattice);
        r.heisenberg_blocks.push_back(std::move(f));
    }
    r.decomposed = true;
    r.finite_index = total.rank() == form.rank;
    r.theorem42 = verify_theorem42(form, parts);
    if (!r.theorem42->passed()) r.diagnostics.push_back("integral blocks fail the structure audit");
    return r;
}

}  // namespace qtdelta
