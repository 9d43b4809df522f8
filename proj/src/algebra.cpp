#include "fpcalc/algebra.hpp"

#include <algorithm>

namespace fpcalc {

SpecialAtom make_bh_atom(const ExactScalar& mass, const Rational& ratio) {
    BhGeometricAtom bh;
    bh.ratio = ratio;
    bh.scale = mass * (ExactScalar(1) - ExactScalar(ratio));
    return SpecialAtom{bh, mass};
}

ExactScalar total_mass(const Algebra& a) {
    ExactScalar total(0);
    for (const auto& term : a.terms) {
        if (auto* m = std::get_if<MatrixSummand>(&term)) {
            for (const auto& w : m->weights) total = total + w;
        } else {
            total = total + std::get<SpecialAtom>(term).mass;
        }
    }
    return total;
}

std::optional<BigInt> linear_dimension(const Algebra& a) {
    BigInt dim = 0;
    for (const auto& term : a.terms) {
        auto* m = std::get_if<MatrixSummand>(&term);
        if (!m) return std::nullopt;
        dim += BigInt(m->size) * BigInt(m->size);
    }
    return dim;
}

namespace {

std::string term_path(const Algebra& a, std::size_t i) {
    return a.name + ".term[" + std::to_string(i) + "]";
}

void check_quad_field(const ExactScalar& v, const std::string& path,
                      std::optional<long long>& seen_d, std::vector<Diagnostic>& out) {
    auto d = v.quad_field();
    if (!d) return;
    if (!seen_d) {
        seen_d = d;
    } else if (*seen_d != *d) {
        out.push_back({path, "quadratic field mismatch: sqrt(" + std::to_string(*d) +
                                 ") vs declared sqrt(" + std::to_string(*seen_d) + ")"});
    }
}

}  // namespace

std::vector<Diagnostic> validate(const Algebra& a, std::optional<long long> global_d) {
    std::vector<Diagnostic> out;
    if (a.terms.empty()) {
        out.push_back({a.name, "algebra has no summands or atoms"});
        return out;
    }
    std::optional<long long> seen_d = global_d;
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
        const std::string path = term_path(a, i);
        if (auto* m = a.matrix_at(i)) {
            if (m->size == 0 || m->weights.size() != m->size) {
                out.push_back({path, "matrix summand size does not match its weight count"});
                continue;
            }
            for (std::size_t k = 0; k < m->weights.size(); ++k) {
                if (m->weights[k].sign() <= 0)
                    out.push_back({path + ".weight[" + std::to_string(k) + "]",
                                   "non-faithful weight " + m->weights[k].str()});
                check_quad_field(m->weights[k], path, seen_d, out);
            }
        } else {
            const auto& atom = *a.atom_at(i);
            if (atom.mass.sign() <= 0)
                out.push_back({path, "non-faithful atom mass " + atom.mass.str()});
            check_quad_field(atom.mass, path, seen_d, out);
            if (auto* bh = std::get_if<BhGeometricAtom>(&atom.kind)) {
                if (bh->ratio.sign() <= 0 || bh->ratio >= Rational(1))
                    out.push_back({path, "geometric ratio must lie in (0,1)"});
                else if (!(bh->scale == atom.mass * (ExactScalar(1) - ExactScalar(bh->ratio))))
                    out.push_back({path, "geometric scale does not equal mass*(1-ratio)"});
            } else if (auto* t3 = std::get_if<TypeIiiAtom>(&atom.kind)) {
                if (t3->sd_generators.empty())
                    out.push_back({path, "type III atom needs at least one spectrum generator"});
                for (const auto& g : t3->sd_generators)
                    if (g.is_one())
                        out.push_back({path, "type III spectrum generator must not be 1"});
            } else if (auto* lf = std::get_if<FreeGroupFactorAtom>(&atom.kind)) {
                if (lf->param && *lf->param <= Rational(1))
                    out.push_back({path, "free group factor parameter must be > 1"});
            }
        }
    }
    if (a.terms.size() == 1) {
        if (auto* m = a.matrix_at(0); m && m->size == 1)
            out.push_back({a.name, "algebra is the scalars C; free factors must be nontrivial"});
    }
    const bool fields_mixed =
        std::any_of(out.begin(), out.end(), [](const Diagnostic& d) {
            return d.message.find("quadratic field mismatch") != std::string::npos;
        });
    if (!fields_mixed) {
        const ExactScalar total = total_mass(a);
        if (!total.is_one())
            out.push_back({a.name, "total mass " + total.str() + " != 1"});
    }
    return out;
}

std::size_t ntr(const Algebra& a) {
    std::size_t n = 0;
    for (const auto& term : a.terms) {
        auto* m = std::get_if<MatrixSummand>(&term);
        if (!m) continue;
        const bool tracial = std::all_of(m->weights.begin(), m->weights.end(),
                                         [&](const ExactScalar& w) { return w == m->weights[0]; });
        if (!tracial) n += m->size;
    }
    return n;
}

bool is_tracial(const Algebra& a) {
    if (ntr(a) != 0) return false;
    for (const auto& term : a.terms) {
        auto* atom = std::get_if<SpecialAtom>(&term);
        if (!atom) continue;
        const bool tracial_atom = std::holds_alternative<DiffuseTracialAtom>(atom->kind) ||
                                  std::holds_alternative<FreeGroupFactorAtom>(atom->kind);
        if (!tracial_atom) return false;
    }
    return true;
}

SpectrumReport point_spectrum(const Algebra& a, const FactorOptions& opts) {
    SpectrumReport report;
    auto add = [&](const RadicalReal& g) {
        if (g.is_one()) return;
        RadicalReal canon = g.canonical_over_one();
        auto& gs = report.generators;
        if (std::find(gs.begin(), gs.end(), canon) == gs.end()) gs.push_back(std::move(canon));
    };
    for (const auto& term : a.terms) {
        if (auto* m = std::get_if<MatrixSummand>(&term)) {
            for (std::size_t i = 0; i < m->weights.size(); ++i)
                for (std::size_t j = i + 1; j < m->weights.size(); ++j) {
                    const ExactScalar ratio = m->weights[i] / m->weights[j];
                    if (ratio.is_one()) continue;
                    if (auto rad = scalar_to_radical(ratio, opts)) {
                        add(*rad);
                    } else {
                        report.complete = false;
                        report.non_radical.push_back(ratio.str());
                    }
                }
        } else {
            const auto& atom = std::get<SpecialAtom>(term);
            if (auto* bh = std::get_if<BhGeometricAtom>(&atom.kind)) {
                add(RadicalReal::from_rational(bh->ratio, opts));
            } else if (auto* t3 = std::get_if<TypeIiiAtom>(&atom.kind)) {
                for (const auto& g : t3->sd_generators) add(g);
            }
            // tracial atoms contribute nothing
        }
    }
    return report;
}

std::vector<std::pair<std::size_t, ExactScalar>> minimal_central_summands(const Algebra& a) {
    std::vector<std::pair<std::size_t, ExactScalar>> out;
    for (std::size_t i = 0; i < a.terms.size(); ++i)
        if (auto* m = a.matrix_at(i); m && m->size == 1)
            out.emplace_back(i, m->weights[0]);
    return out;
}

}  // namespace fpcalc
