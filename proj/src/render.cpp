#include "fpcalc/render.hpp"

#include <json.hpp>

#include <cstdio>

namespace fpcalc {

namespace {

using Json = nlohmann::ordered_json;

std::string approx_str(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string weights_csv(const std::vector<ExactScalar>& ws) {
    std::string s;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        if (i) s += ",";
        s += ws[i].str();
    }
    return s;
}

std::string offspring_head(const Offspring& o) {
    if (o.size == 1) return "C:[" + weights_csv(o.weights) + "]";
    return "M" + std::to_string(o.size) + ":[" + weights_csv(o.weights) + "]";
}

Json subgroup_to_json(const MultSubgroup& g) {
    Json j;
    Json primes = Json::array();
    for (const auto& p : g.primes()) primes.push_back(p.str());
    j["primes"] = std::move(primes);
    Json basis = Json::array();
    for (const auto& row : g.basis()) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(x.str());
        basis.push_back(std::move(r));
    }
    j["basis"] = std::move(basis);
    j["D"] = g.denominator_scale().str();
    return j;
}

MultSubgroup subgroup_from_json(const Json& j) {
    std::vector<BigInt> primes;
    for (const auto& p : j.at("primes")) primes.emplace_back(p.get<std::string>());
    std::vector<std::vector<BigInt>> basis;
    for (const auto& row : j.at("basis")) {
        std::vector<BigInt> r;
        for (const auto& x : row) r.emplace_back(x.get<std::string>());
        basis.push_back(std::move(r));
    }
    return MultSubgroup::from_parts(std::move(primes), std::move(basis),
                                    BigInt(j.at("D").get<std::string>()));
}

Json continuous_to_json(const ContinuousPart& c) {
    Json j;
    j["mass"] = c.mass.str();
    if (c.kind == ContinuousPart::Kind::TypeIII) {
        j["kind"] = "III";
        Json sd = subgroup_to_json(c.sd_group);
        sd["rank"] = c.sd.rank;
        sd["class"] = c.sd.is_cyclic() ? "cyclic" : "dense";
        if (c.sd.lambda) sd["lambda"] = c.sd.lambda->str();
        Json gens = Json::array();
        for (std::size_t i = 0; i < c.sd_group.rank(); ++i)
            gens.push_back(c.sd_group.basis_radical(i).str());
        sd["generators"] = std::move(gens);
        j["sd"] = std::move(sd);
        j["centralizer"] = "LFinf";
    } else {
        j["kind"] = "II1";
        j["form"] = c.form == ContinuousPart::TracialForm::LZTensorM2 ? "L(Z)xM2" : "L(F_t)";
    }
    j["fullness"] = c.fullness ? "full" : "unknown";
    if (c.fullness) j["fullness_reason"] = *c.fullness;
    return j;
}

ContinuousPart continuous_from_json(const Json& j) {
    ContinuousPart c;
    auto mass = parse_scalar_literal(j.at("mass").get<std::string>());
    if (!mass) throw std::invalid_argument("continuous.mass: bad scalar");
    c.mass = *mass;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "III") {
        c.kind = ContinuousPart::Kind::TypeIII;
        const Json& sd = j.at("sd");
        c.sd_group = subgroup_from_json(sd);
        c.sd.rank = sd.at("rank").get<std::size_t>();
        const std::string cls = sd.at("class").get<std::string>();
        c.sd.kind = cls == "cyclic" ? SubgroupClass::Kind::Cyclic : SubgroupClass::Kind::Dense;
        if (sd.contains("lambda")) {
            auto lambda = parse_radical_literal(sd.at("lambda").get<std::string>());
            if (!lambda) throw std::invalid_argument("continuous.sd.lambda: bad radical");
            c.sd.lambda = *lambda;
        }
    } else if (kind == "II1") {
        c.kind = ContinuousPart::Kind::TracialII1;
        c.form = j.at("form").get<std::string>() == "L(Z)xM2"
                     ? ContinuousPart::TracialForm::LZTensorM2
                     : ContinuousPart::TracialForm::InterpolatedFreeGroup;
    } else {
        throw std::invalid_argument("continuous.kind: expected III or II1");
    }
    if (j.contains("fullness_reason")) c.fullness = j.at("fullness_reason").get<std::string>();
    return c;
}

Json decomposition_to_json(const Decomposition& dec) {
    Json j;
    Json type_i = Json::array();
    for (const auto& o : dec.type_I) {
        Json jo;
        jo["size"] = o.size;
        Json ws = Json::array();
        for (const auto& w : o.weights) ws.push_back(w.str());
        jo["weights"] = std::move(ws);
        Json labels = Json::array();
        for (const auto& l : o.labels) labels.push_back(l.str());
        jo["labels"] = std::move(labels);
        jo["parents"] = o.parent_refs;
        type_i.push_back(std::move(jo));
    }
    j["type_I"] = std::move(type_i);
    j["continuous"] = continuous_to_json(dec.continuous);
    Json dominant = Json::array();
    for (const auto& [a, t] : dec.dominant) dominant.push_back(Json::array({a, t}));
    j["dominant"] = std::move(dominant);
    Json trace = Json::array();
    for (const auto& e : dec.trace) {
        Json je;
        je["kind"] = e.kind;
        for (const auto& [k, v] : e.fields) je[k] = v;
        trace.push_back(std::move(je));
    }
    j["trace"] = std::move(trace);
    return j;
}

}  // namespace

std::string decomposition_to_json_text(const Decomposition& dec) {
    return decomposition_to_json(dec).dump(2) + "\n";
}

std::string decomposition_to_json_line(const Decomposition& dec) {
    return decomposition_to_json(dec).dump();
}

Decomposition decomposition_from_json_text(const std::string& text) {
    const Json j = Json::parse(text);
    Decomposition dec;
    for (const Json& jo : j.at("type_I")) {
        Offspring o;
        o.size = jo.at("size").get<std::size_t>();
        for (const auto& w : jo.at("weights")) {
            auto s = parse_scalar_literal(w.get<std::string>());
            if (!s) throw std::invalid_argument("type_I.weights: bad scalar");
            o.weights.push_back(*s);
        }
        for (const auto& l : jo.at("labels")) {
            auto e = ProjectionExpr::parse(l.get<std::string>());
            if (!e) throw std::invalid_argument("type_I.labels: bad projection expression");
            o.labels.push_back(std::move(*e));
        }
        o.parent_refs = jo.at("parents").get<std::vector<std::size_t>>();
        dec.type_I.push_back(std::move(o));
    }
    dec.continuous = continuous_from_json(j.at("continuous"));
    for (const auto& d : j.at("dominant"))
        dec.dominant.emplace_back(d.at(0).get<std::size_t>(), d.at(1).get<std::size_t>());
    for (const auto& je : j.at("trace")) {
        TraceEntry e;
        for (auto it = je.begin(); it != je.end(); ++it) {
            if (it.key() == "kind")
                e.kind = it.value().get<std::string>();
            else
                e.fields.emplace_back(it.key(), it.value().get<std::string>());
        }
        dec.trace.push_back(std::move(e));
    }
    return dec;
}

namespace {

std::string render_ascii(const Decomposition& dec, bool include_trace) {
    std::string s;
    if (dec.type_I.empty()) {
        s += "D: (none)\n";
    } else {
        s += "D (type I part):\n";
        for (const auto& o : dec.type_I) {
            s += "  " + offspring_head(o) + "  parents:";
            for (std::size_t a = 0; a < o.parent_refs.size(); ++a)
                s += std::string(a ? "," : "") + " A" + std::to_string(a + 1) + "." +
                     std::to_string(o.parent_refs[a] + 1);
            s += "\n";
            for (std::size_t i = 0; i < o.labels.size(); ++i)
                s += "    r_" + std::to_string(i + 1) + " = " + o.labels[i].str() + "\n";
        }
        if (!dec.dominant.empty()) {
            s += "dominant:";
            for (std::size_t i = 0; i < dec.dominant.size(); ++i)
                s += std::string(i ? "," : "") + " A" + std::to_string(dec.dominant[i].first + 1) +
                     "." + std::to_string(dec.dominant[i].second + 1);
            s += "\n";
        }
    }
    const ContinuousPart& c = dec.continuous;
    s += "M0 (continuous part): mass " + c.mass.str() + "\n";
    if (c.kind == ContinuousPart::Kind::TypeIII) {
        if (c.sd.is_cyclic()) {
            s += "  type III_lambda lambda=" + c.sd.lambda->str() + " (≈ " +
                 approx_str(c.sd.lambda->approx()) + ")\n";
            s += "  Sd: cyclic <" + c.sd.lambda->str() + ">; rank 1\n";
        } else {
            s += "  type III_1\n";
            s += "  Sd: dense (rank " + std::to_string(c.sd.rank) + "); generators:";
            for (std::size_t i = 0; i < c.sd_group.rank(); ++i)
                s += std::string(i ? "," : "") + " " + c.sd_group.basis_radical(i).str();
            s += "\n";
        }
        s += "  centralizer: L(F_inf)\n";
        s += "  fullness: " + (c.fullness ? "full (" + *c.fullness + ")" : std::string("unknown")) +
             "\n";
    } else {
        s += "  type II_1 (all states tracial)\n";
        s += c.form == ContinuousPart::TracialForm::LZTensorM2
                 ? "  form: L(Z) (x) M2\n"
                 : "  form: interpolated free group factor L(F_t), t not computed\n";
        s += "  fullness: unknown\n";
    }
    if (include_trace) {
        s += "trace:\n";
        for (const auto& e : dec.trace) {
            s += "  [" + e.kind + "]";
            for (const auto& [k, v] : e.fields) s += " " + k + "=" + v;
            s += "\n";
        }
    }
    return s;
}

}  // namespace

std::string render_decomposition(const Decomposition& dec, RenderMode mode, bool include_trace) {
    if (mode == RenderMode::Json) return decomposition_to_json_text(dec);
    return render_ascii(dec, include_trace);
}

std::string render_spectrum_report(const std::string& algebra_name, const SpectrumReport& report) {
    std::string s = algebra_name + ": {";
    for (std::size_t i = 0; i < report.generators.size(); ++i)
        s += std::string(i ? ", " : "") + report.generators[i].str();
    s += "}";
    if (report.complete) {
        s += " complete";
    } else {
        s += " incomplete (non-radical:";
        for (std::size_t i = 0; i < report.non_radical.size(); ++i)
            s += std::string(i ? ", " : " ") + report.non_radical[i];
        s += ")";
    }
    return s + "\n";
}

}  // namespace fpcalc
