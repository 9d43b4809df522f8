#include "fpcalc/engine.hpp"

#include <algorithm>
#include <functional>

namespace fpcalc {

// ---------------------------------------------------------------------------
// ProjectionExpr

std::string MatrixUnitRef::str() const {
    return "v(" + std::to_string(algebra + 1) + ")[" + std::to_string(summand + 1) + ";" +
           std::to_string(row + 1) + "," + std::to_string(col + 1) + "]";
}

ProjectionExpr ProjectionExpr::atom(std::size_t algebra, std::size_t summand, std::size_t index) {
    ProjectionExpr e;
    e.kind_ = Kind::Atom;
    e.algebra_ = algebra;
    e.summand_ = summand;
    e.index_ = index;
    return e;
}

ProjectionExpr ProjectionExpr::meet(std::vector<ProjectionExpr> children) {
    if (children.size() < 2) throw std::invalid_argument("ProjectionExpr: meet needs >= 2 children");
    ProjectionExpr e;
    e.kind_ = Kind::Meet;
    e.children_ = std::move(children);
    return e;
}

ProjectionExpr ProjectionExpr::conj(MatrixUnitRef unit, ProjectionExpr child) {
    ProjectionExpr e;
    e.kind_ = Kind::Conj;
    e.unit_ = unit;
    e.children_.push_back(std::move(child));
    return e;
}

std::string ProjectionExpr::str() const {
    switch (kind_) {
        case Kind::Atom:
            return "p(" + std::to_string(algebra_ + 1) + ")[" + std::to_string(summand_ + 1) +
                   "," + std::to_string(index_ + 1) + "]";
        case Kind::Meet: {
            std::string s = "(";
            for (std::size_t i = 0; i < children_.size(); ++i) {
                if (i) s += " ^ ";
                s += children_[i].str();
            }
            return s + ")";
        }
        case Kind::Conj: {
            const std::string inner = children_[0].kind() == Kind::Meet
                                          ? children_[0].str()
                                          : "(" + children_[0].str() + ")";
            return unit_.str() + "*" + inner + "*" + unit_.transposed().str();
        }
    }
    return {};
}

namespace {

struct LabelParser {
    std::string_view s;
    std::size_t pos = 0;

    bool eat(char c) {
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    bool eat(std::string_view lit) {
        if (s.substr(pos, lit.size()) == lit) { pos += lit.size(); return true; }
        return false;
    }
    std::optional<std::size_t> number() {
        std::size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == start) return std::nullopt;
        return std::stoull(std::string(s.substr(start, pos - start)));
    }

    std::optional<ProjectionExpr> expr() {
        if (pos >= s.size()) return std::nullopt;
        if (s[pos] == '(') return group();
        if (s[pos] == 'p') return atom();
        if (s[pos] == 'v') return conj();
        return std::nullopt;
    }

    std::optional<ProjectionExpr> group() {
        if (!eat('(')) return std::nullopt;
        std::vector<ProjectionExpr> items;
        auto first = expr();
        if (!first) return std::nullopt;
        items.push_back(std::move(*first));
        while (eat(" ^ ")) {
            auto next = expr();
            if (!next) return std::nullopt;
            items.push_back(std::move(*next));
        }
        if (!eat(')')) return std::nullopt;
        if (items.size() == 1) return std::move(items[0]);
        return ProjectionExpr::meet(std::move(items));
    }

    std::optional<ProjectionExpr> atom() {
        if (!eat("p(")) return std::nullopt;
        auto a = number();
        if (!a || !eat(")[")) return std::nullopt;
        auto j = number();
        if (!j || !eat(',')) return std::nullopt;
        auto i = number();
        if (!i || !eat(']')) return std::nullopt;
        return ProjectionExpr::atom(*a - 1, *j - 1, *i - 1);
    }

    std::optional<MatrixUnitRef> unit() {
        if (!eat("v(")) return std::nullopt;
        auto a = number();
        if (!a || !eat(")[")) return std::nullopt;
        auto j = number();
        if (!j || !eat(';')) return std::nullopt;
        auto r = number();
        if (!r || !eat(',')) return std::nullopt;
        auto c = number();
        if (!c || !eat(']')) return std::nullopt;
        return MatrixUnitRef{*a - 1, *j - 1, *r - 1, *c - 1};
    }

    std::optional<ProjectionExpr> conj() {
        auto u = unit();
        if (!u || !eat('*')) return std::nullopt;
        auto child = group();
        if (!child || !eat('*')) return std::nullopt;
        auto u2 = unit();
        if (!u2 || !(*u2 == u->transposed())) return std::nullopt;
        return ProjectionExpr::conj(*u, std::move(*child));
    }
};

}  // namespace

std::optional<ProjectionExpr> ProjectionExpr::parse(std::string_view text) {
    LabelParser p{text};
    auto e = p.expr();
    if (!e || p.pos != text.size()) return std::nullopt;
    return e;
}

// ---------------------------------------------------------------------------
// Mating rules

namespace {

// Offspring labels per the meet-of-matrix-units construction: entry t of the
// distinguished summand contributes v_{1,t} (p_1 ^ ... ^ q_t) v_{t,1}, label 1
// is the meet over t, and label i is its conjugate by v_{i,1}.
std::vector<ProjectionExpr> offspring_labels(const std::vector<const MatrixSummand*>& choices,
                                             const std::vector<std::size_t>& term_indices,
                                             std::size_t distinguished) {
    const std::size_t m = choices[distinguished]->size;
    std::vector<ProjectionExpr> c_projs;
    for (std::size_t i = 0; i < choices.size(); ++i)
        if (i != distinguished) c_projs.push_back(ProjectionExpr::atom(i, term_indices[i], 0));

    auto meet_with = [&](std::size_t t) {
        std::vector<ProjectionExpr> children = c_projs;
        children.push_back(ProjectionExpr::atom(distinguished, term_indices[distinguished], t));
        return ProjectionExpr::meet(std::move(children));
    };

    std::vector<ProjectionExpr> labels;
    if (m == 1) {
        labels.push_back(meet_with(0));
        return labels;
    }
    std::vector<ProjectionExpr> parts;
    for (std::size_t t = 0; t < m; ++t) {
        MatrixUnitRef u{distinguished, term_indices[distinguished], 0, t};
        parts.push_back(ProjectionExpr::conj(u, meet_with(t)));
    }
    labels.push_back(ProjectionExpr::meet(std::move(parts)));
    for (std::size_t i = 1; i < m; ++i) {
        MatrixUnitRef u{distinguished, term_indices[distinguished], i, 0};
        labels.push_back(ProjectionExpr::conj(u, labels[0]));
    }
    return labels;
}

}  // namespace

std::optional<Offspring> mate_family(const std::vector<const MatrixSummand*>& choices,
                                     const std::vector<std::size_t>& term_indices) {
    if (choices.size() < 2) throw std::invalid_argument("mate_family: needs at least two parties");
    if (term_indices.size() != choices.size())
        throw std::invalid_argument("mate_family: one term index per choice");

    std::size_t distinguished = choices.size() - 1, large = 0;
    for (std::size_t i = 0; i < choices.size(); ++i)
        if (choices[i]->size >= 2) { ++large; distinguished = i; }
    if (large >= 2) return std::nullopt;  // all but one participant must be C

    ExactScalar deficiency(0);
    for (std::size_t i = 0; i < choices.size(); ++i)
        if (i != distinguished) deficiency = deficiency + (ExactScalar(1) - choices[i]->weights[0]);

    const MatrixSummand& dist = *choices[distinguished];
    ExactScalar recip_sum(0);
    for (const auto& w : dist.weights) recip_sum = recip_sum + w.inverse();

    // Offspring iff 1/sum(1-alpha) > sum(1/beta), strictly.
    const ExactScalar product = deficiency * recip_sum;
    if (!(product < ExactScalar(1))) return std::nullopt;

    const ExactScalar scale = ExactScalar(1) - product;
    Offspring o;
    o.size = dist.size;
    for (const auto& w : dist.weights) o.weights.push_back(w * scale);
    o.parent_refs = term_indices;
    o.labels = offspring_labels(choices, term_indices, distinguished);
    return o;
}

std::optional<Offspring> mate_family(const std::vector<MatrixSummand>& choices) {
    std::vector<const MatrixSummand*> ptrs;
    for (const auto& c : choices) ptrs.push_back(&c);
    return mate_family(ptrs, std::vector<std::size_t>(choices.size(), 0));
}

std::optional<Offspring> mate_pair(const MatrixSummand& s1, const MatrixSummand& s2,
                                   std::size_t idx1, std::size_t idx2) {
    return mate_family({&s1, &s2}, {idx1, idx2});
}

// ---------------------------------------------------------------------------
// Type I assembly

namespace {

struct SummandIndex {
    std::vector<std::vector<std::size_t>> c_terms;    // size-1 matrix summands
    std::vector<std::vector<std::size_t>> big_terms;  // size >= 2 matrix summands
};

SummandIndex index_summands(std::span<const Algebra> algebras) {
    SummandIndex idx;
    idx.c_terms.resize(algebras.size());
    idx.big_terms.resize(algebras.size());
    for (std::size_t a = 0; a < algebras.size(); ++a)
        for (std::size_t t = 0; t < algebras[a].term_count(); ++t)
            if (auto* m = algebras[a].matrix_at(t))
                (m->size == 1 ? idx.c_terms : idx.big_terms)[a].push_back(t);
    return idx;
}

BigInt candidate_tuple_count(const SummandIndex& idx) {
    const std::size_t k = idx.c_terms.size();
    BigInt all_c = 1;
    for (const auto& c : idx.c_terms) all_c *= BigInt(c.size());
    BigInt total = all_c;
    for (std::size_t a = 0; a < k; ++a) {
        BigInt branch = BigInt(idx.big_terms[a].size());
        for (std::size_t b = 0; b < k; ++b)
            if (b != a) branch *= BigInt(idx.c_terms[b].size());
        total += branch;
    }
    return total;
}

void trace_mating(std::vector<TraceEntry>* trace, const std::vector<std::size_t>& tuple,
                  const std::vector<const MatrixSummand*>& choices,
                  std::optional<std::size_t> distinguished, const std::optional<Offspring>& o) {
    if (!trace) return;
    TraceEntry e;
    e.kind = "mate";
    std::string parents;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) parents += ",";
        parents += std::to_string(tuple[i]);
    }
    e.fields.emplace_back("parents", parents);
    // the evaluated inequality: sum(1-alpha) * sum(1/beta) < 1
    const std::size_t dist = distinguished.value_or(choices.size() - 1);
    e.fields.emplace_back("distinguished", std::to_string(dist));
    ExactScalar deficiency(0), recip_sum(0);
    for (std::size_t i = 0; i < choices.size(); ++i)
        if (i != dist) deficiency = deficiency + (ExactScalar(1) - choices[i]->weights[0]);
    for (const auto& w : choices[dist]->weights) recip_sum = recip_sum + w.inverse();
    e.fields.emplace_back("deficiency", deficiency.str());
    e.fields.emplace_back("recip_sum", recip_sum.str());
    e.fields.emplace_back("offspring", o ? "yes" : "no");
    if (o) {
        std::string ws;
        for (std::size_t i = 0; i < o->weights.size(); ++i) {
            if (i) ws += ",";
            ws += o->weights[i].str();
        }
        e.fields.emplace_back("weights", ws);
    }
    trace->push_back(std::move(e));
}

}  // namespace

std::vector<Offspring> type_I_part(std::span<const Algebra> algebras, const ClassifyOptions& opts,
                                   std::vector<TraceEntry>* trace) {
    if (algebras.size() < 2)
        throw std::invalid_argument("type_I_part: needs at least two algebras");
    const SummandIndex idx = index_summands(algebras);
    if (candidate_tuple_count(idx) > BigInt(opts.tuple_cap))
        throw CapExceededError("mating enumeration exceeds the tuple cap (" +
                               std::to_string(opts.tuple_cap) + "); raise it with --cap");

    const std::size_t k = algebras.size();
    std::vector<Offspring> result;
    std::vector<std::size_t> tuple(k, 0);

    // Walks C-summand choices for every algebra except `skip`, pruning once
    // the accumulated deficiency sum(1-alpha) reaches 1.
    std::function<void(std::size_t, ExactScalar, std::optional<std::size_t>)> walk =
        [&](std::size_t a, ExactScalar deficiency, std::optional<std::size_t> skip) {
            if (a == k) {
                std::vector<const MatrixSummand*> choices;
                for (std::size_t i = 0; i < k; ++i) choices.push_back(algebras[i].matrix_at(tuple[i]));
                auto o = mate_family(choices, tuple);
                trace_mating(trace, tuple, choices, skip, o);
                if (o) result.push_back(std::move(*o));
                return;
            }
            if (skip && *skip == a) {
                walk(a + 1, deficiency, skip);
                return;
            }
            for (std::size_t t : idx.c_terms[a]) {
                const ExactScalar next =
                    deficiency + (ExactScalar(1) - algebras[a].matrix_at(t)->weights[0]);
                if (!(next < ExactScalar(1))) continue;  // no offspring can follow
                tuple[a] = t;
                walk(a + 1, next, skip);
            }
        };

    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t t : idx.big_terms[a]) {
            tuple[a] = t;
            walk(0, ExactScalar(0), a);
        }
    walk(0, ExactScalar(0), std::nullopt);
    return result;
}

// ---------------------------------------------------------------------------
// Dominant projection

std::vector<std::pair<std::size_t, std::size_t>> dominant_projection(
    std::span<const Algebra> algebras, const std::vector<Offspring>& offspring) {
    if (algebras.size() != 2 || offspring.empty()) return {};
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < 2; ++a)
        for (const auto& [term, weight] : minimal_central_summands(algebras[a])) {
            const bool covers_all =
                std::all_of(offspring.begin(), offspring.end(),
                            [&](const Offspring& o) { return o.parent_refs[a] == term; });
            if (covers_all) out.emplace_back(a, term);
        }
    if (out.empty())
        throw ConsistencyError(
            "offspring exist but no minimal central projection covers all of them");
    return out;
}

// ---------------------------------------------------------------------------
// Continuous part and classification

namespace {

bool is_single_m2(const Algebra& a) {
    if (a.term_count() != 1) return false;
    auto* m = a.matrix_at(0);
    return m && m->size == 2;
}

std::string join_radicals(const std::vector<RadicalReal>& gens) {
    std::string s;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) s += ",";
        s += gens[i].str();
    }
    return s;
}

}  // namespace

ContinuousPart continuous_part(std::span<const Algebra> algebras,
                               const std::vector<Offspring>& offspring,
                               const ClassifyOptions& opts, std::vector<TraceEntry>* trace) {
    ContinuousPart part;
    ExactScalar used(0);
    for (const auto& o : offspring)
        for (const auto& w : o.weights) used = used + w;
    part.mass = ExactScalar(1) - used;
    if (part.mass.sign() <= 0)
        throw ConsistencyError("type I offspring exhaust the state; the continuous part is empty");

    const bool all_tracial =
        std::all_of(algebras.begin(), algebras.end(), [](const Algebra& a) { return is_tracial(a); });

    if (all_tracial) {
        part.kind = ContinuousPart::Kind::TracialII1;
        const bool both_dim_two = algebras.size() == 2 &&
                                  linear_dimension(algebras[0]) == BigInt(2) &&
                                  linear_dimension(algebras[1]) == BigInt(2);
        part.form = both_dim_two ? ContinuousPart::TracialForm::LZTensorM2
                                 : ContinuousPart::TracialForm::InterpolatedFreeGroup;
        return part;
    }

    part.kind = ContinuousPart::Kind::TypeIII;
    const FactorOptions fopts{opts.allow_large_factor};
    std::vector<RadicalReal> generators;
    std::vector<std::string> non_radical;
    for (const auto& a : algebras) {
        SpectrumReport report = point_spectrum(a, fopts);
        generators.insert(generators.end(), report.generators.begin(), report.generators.end());
        non_radical.insert(non_radical.end(), report.non_radical.begin(), report.non_radical.end());
    }
    if (!non_radical.empty()) throw IndeterminateError(std::move(generators), std::move(non_radical));

    part.sd_group = MultSubgroup::generate(generators);
    part.sd = part.sd_group.classify();
    if (part.sd.is_trivial())
        throw ConsistencyError("a non-tracial free factor must contribute a nontrivial spectrum");

    if (trace) {
        TraceEntry e;
        e.kind = "subgroup";
        e.fields.emplace_back("generators", join_radicals(generators));
        e.fields.emplace_back("rank", std::to_string(part.sd_group.rank()));
        e.fields.emplace_back("class", part.sd.is_cyclic() ? "cyclic" : "dense");
        if (part.sd.is_cyclic()) e.fields.emplace_back("lambda", part.sd.lambda->str());
        trace->push_back(std::move(e));
    }

    if (part.sd.is_cyclic()) {
        part.fullness = "III_lambda centralizer non-Gamma";
    } else if (algebras.size() == 2 && is_single_m2(algebras[0]) && is_single_m2(algebras[1])) {
        part.fullness = "M2*M2 free product is full";
    } else if (opts.assume_barnett_full) {
        part.fullness = "Barnett criterion via construct_with_sd";
    }
    return part;
}

namespace {

std::optional<long long> first_quad_field(std::span<const Algebra> algebras) {
    for (const auto& a : algebras)
        for (const auto& term : a.terms) {
            if (auto* m = std::get_if<MatrixSummand>(&term)) {
                for (const auto& w : m->weights)
                    if (auto d = w.quad_field()) return d;
            } else if (auto d = std::get<SpecialAtom>(term).mass.quad_field()) {
                return d;
            }
        }
    return std::nullopt;
}

void validate_family(std::span<const Algebra> algebras) {
    std::vector<Diagnostic> diags;
    if (algebras.size() < 2)
        diags.push_back({"", "a free product needs at least two algebras"});
    const std::optional<long long> shared_d = first_quad_field(algebras);
    for (const auto& a : algebras) {
        auto local = validate(a, shared_d);
        diags.insert(diags.end(), local.begin(), local.end());
    }
    if (!diags.empty()) throw ValidationError(std::move(diags));
}

}  // namespace

Decomposition classify(std::span<const Algebra> algebras, const ClassifyOptions& opts) {
    validate_family(algebras);
    Decomposition dec;
    dec.type_I = type_I_part(algebras, opts, &dec.trace);
    if (algebras.size() == 2) {
        dec.dominant = dominant_projection(algebras, dec.type_I);
        TraceEntry e;
        e.kind = "dominant";
        std::string cands;
        for (const auto& [a, t] : dec.dominant) {
            if (!cands.empty()) cands += ",";
            cands += algebras[a].name + ".term[" + std::to_string(t) + "]";
        }
        e.fields.emplace_back("candidates", cands.empty() ? "-" : cands);
        dec.trace.push_back(std::move(e));
    } else if (!dec.type_I.empty()) {
        TraceEntry e;
        e.kind = "dominant";
        e.fields.emplace_back("note", "dominance is defined for two parties; see parent refs");
        dec.trace.push_back(std::move(e));
    }
    dec.continuous = continuous_part(algebras, dec.type_I, opts, &dec.trace);
    return dec;
}

Decomposition classify(const std::vector<Algebra>& algebras, const ClassifyOptions& opts) {
    return classify(std::span<const Algebra>(algebras.data(), algebras.size()), opts);
}

// ---------------------------------------------------------------------------
// Prescribed-Sd construction

std::vector<Algebra> construct_with_sd(const std::vector<Rational>& generators) {
    if (generators.empty())
        throw ValidationError(
            std::vector<Diagnostic>{{"", "construct_with_sd: needs at least one generator"}});
    std::vector<Diagnostic> diags;
    for (const auto& g : generators)
        if (!(g > Rational(0) && g < Rational(1)))
            diags.push_back({"", "construct_with_sd: generator " + g.str() + " not in (0,1)"});
    if (!diags.empty()) throw ValidationError(std::move(diags));

    std::vector<Rational> gens = generators;
    if (gens.size() == 1) gens.push_back(gens[0]);  // a free product needs two factors

    std::vector<Algebra> out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const Rational denom = Rational(1) + gens[i];
        MatrixSummand m;
        m.size = 2;
        m.weights = {ExactScalar(Rational(1) / denom), ExactScalar(gens[i] / denom)};
        m.label = "m" + std::to_string(i + 1);
        Algebra a;
        a.name = "A" + std::to_string(i + 1);
        a.terms.push_back(std::move(m));
        out.push_back(std::move(a));
    }
    return out;
}

Decomposition classify_constructed(const std::vector<Rational>& generators, ClassifyOptions opts) {
    opts.assume_barnett_full = true;
    const auto algebras = construct_with_sd(generators);
    return classify(algebras, opts);
}

}  // namespace fpcalc
