#include "hptkit/json_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hptkit/errors.hpp"
#include "hptkit/scalar.hpp"

namespace hptkit {

namespace {

const Json& member(const Json& j, const char* key, const std::string& location) {
    if (!j.is_object()) throw ParseError(location, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(location, std::string("missing \"") + key + "\"");
    return *it;
}

std::string string_member(const Json& j, const char* key, const std::string& location) {
    const Json& v = member(j, key, location);
    if (!v.is_string()) throw ParseError(location + "." + key, "expected a string");
    return v.get<std::string>();
}

Scalar scalar_from_json(const Json& v, const std::string& location) {
    if (v.is_string()) return parse_scalar(v.get<std::string>(), location);
    if (v.is_number_integer()) {
        if (v.is_number_unsigned()) return Scalar(std::to_string(v.get<unsigned long long>()));
        return Scalar(std::to_string(v.get<long long>()));
    }
    throw ParseError(location, "coefficient must be an integer or a \"p/q\" string");
}

int parse_degree(const std::string& text, const std::string& location) {
    int value = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw ParseError(location, "degree key \"" + text + "\" is not an integer");
    }
    return value;
}

ModulePtr module_from_json(const Json& degrees, const std::string& location) {
    if (!degrees.is_object()) throw ParseError(location, "expected an object of degree -> labels");
    GradedModule::LabelMap labels;
    for (auto it = degrees.begin(); it != degrees.end(); ++it) {
        const std::string loc = location + "." + it.key();
        const int deg = parse_degree(it.key(), loc);
        if (!it.value().is_array()) throw ParseError(loc, "expected an array of labels");
        auto& list = labels[deg];
        for (std::size_t k = 0; k < it.value().size(); ++k) {
            const Json& label = it.value()[k];
            if (!label.is_string()) throw ParseError(loc + "[" + std::to_string(k) + "]", "label must be a string");
            list.push_back(label.get<std::string>());
        }
    }
    try {
        return make_module(std::move(labels));
    } catch (const StructuralError& e) {
        throw ParseError(location, e.what());
    }
}

Json module_to_json(const GradedModule& m) {
    Json out = Json::object();
    for (const auto& [deg, labels] : m.label_map()) out[std::to_string(deg)] = labels;
    return out;
}

template <class T>
const T& expect(const ParsedStructure& s, const char* what) {
    if (auto* p = std::get_if<T>(&s)) return *p;
    throw ParseError("kind", std::string("expected ") + what);
}

}  // namespace

Json map_to_json(const GradedMap& f) {
    Json out = Json::array();
    const auto& src = *f.source();
    const auto& tgt = *f.target();
    f.for_each([&](int deg, std::size_t row, std::size_t col, const Scalar& v) {
        const std::string& from = src.labels(deg)[col];
        Json e = Json::object();
        e["from"] = from;
        e["to"] = tgt.labels(deg + f.degree())[row];
        e["coeff"] = to_string(v);
        if (src.degrees_of(from).size() > 1) e["from_degree"] = deg;
        out.push_back(std::move(e));
    });
    return out;
}

GradedMap map_from_json(const Json& j, const ModulePtr& source, const ModulePtr& target, int degree,
                        const std::string& location) {
    if (!j.is_array()) throw ParseError(location, "expected an array of entries");
    GradedMap out(source, target, degree);
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string loc = location + "[" + std::to_string(k) + "]";
        const Json& e = j[k];
        const std::string from = string_member(e, "from", loc);
        const std::string to = string_member(e, "to", loc);
        const Scalar coeff = scalar_from_json(member(e, "coeff", loc), loc + ".coeff");
        int deg = 0;
        if (e.contains("from_degree")) {
            if (!e["from_degree"].is_number_integer()) throw ParseError(loc + ".from_degree", "expected an integer");
            deg = e["from_degree"].get<int>();
            if (!source->index_of(deg, from)) {
                throw ParseError(loc + ".from", "no label \"" + from + "\" in degree " + std::to_string(deg));
            }
        } else {
            const auto degs = source->degrees_of(from);
            if (degs.empty()) throw ParseError(loc + ".from", "unknown label \"" + from + "\"");
            if (degs.size() > 1) {
                throw ParseError(loc + ".from", "label \"" + from + "\" occurs in several degrees; add from_degree");
            }
            deg = degs.front();
        }
        const auto row = target->index_of(deg + degree, to);
        if (!row) {
            throw ParseError(loc + ".to", "no label \"" + to + "\" in degree " + std::to_string(deg + degree) +
                                              " of the target");
        }
        out.add(deg, *row, *source->index_of(deg, from), coeff);
    }
    return out;
}

Json complex_to_json(const ChainComplex& c) {
    Json out = Json::object();
    out["degrees"] = module_to_json(*c.module());
    out["d"] = map_to_json(c.d());
    return out;
}

ChainComplex complex_from_json(const Json& j, const std::string& location) {
    const ModulePtr m = module_from_json(member(j, "degrees", location), location + ".degrees");
    if (!j.contains("d")) return ChainComplex(m);
    return ChainComplex(m, map_from_json(j["d"], m, m, -1, location + ".d"));
}

const char* structure_kind(const ParsedStructure& s) {
    switch (s.index()) {
        case 0: return "complex";
        case 1: return "pseudocontraction";
        case 2: return "weak";
        case 3: return "contraction";
        default: return "hodge";
    }
}

ParsedStructure structure_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("", "expected a JSON object");
    std::string kind = "complex";
    if (j.contains("kind")) {
        if (!j["kind"].is_string()) throw ParseError("kind", "expected a string");
        kind = j["kind"].get<std::string>();
    } else if (!j.contains("degrees")) {
        throw ParseError("", "missing \"kind\"");
    }
    if (kind == "complex") return complex_from_json(j, "complex");
    if (kind == "pseudocontraction") {
        ChainComplex N = complex_from_json(member(j, "N", ""), "N");
        const auto& m = N.module();
        GradedMap tau = map_from_json(member(j, "tau", ""), m, m, 0, "tau");
        GradedMap h = map_from_json(member(j, "h", ""), m, m, 1, "h");
        return Pseudocontraction{std::move(N), std::move(tau), std::move(h)};
    }
    if (kind == "weak" || kind == "contraction") {
        ChainComplex N = complex_from_json(member(j, "N", ""), "N");
        ChainComplex M = complex_from_json(member(j, "M", ""), "M");
        const auto& n = N.module();
        const auto& m = M.module();
        GradedMap pi = map_from_json(member(j, "pi", ""), n, m, 0, "pi");
        GradedMap nabla = map_from_json(member(j, "nabla", ""), m, n, 0, "nabla");
        GradedMap h = map_from_json(member(j, "h", ""), n, n, 1, "h");
        if (kind == "weak") return WeakContraction{std::move(M), std::move(N), std::move(pi), std::move(nabla), std::move(h)};
        return Contraction{std::move(M), std::move(N), std::move(pi), std::move(nabla), std::move(h)};
    }
    if (kind == "hodge") {
        ChainComplex X = complex_from_json(member(j, "X", ""), "X");
        const auto& m = X.module();
        GradedMap t = map_from_json(member(j, "t", ""), m, m, 0, "t");
        GradedMap h = map_from_json(member(j, "h", ""), m, m, 1, "h");
        return HodgeData{std::move(X), std::move(t), std::move(h)};
    }
    throw ParseError("kind", "unknown kind \"" + kind + "\"");
}

Json structure_to_json(const ParsedStructure& s) {
    Json out = Json::object();
    out["kind"] = structure_kind(s);
    std::visit(
        [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ChainComplex>) {
                const Json c = complex_to_json(v);
                out["degrees"] = c["degrees"];
                out["d"] = c["d"];
            } else if constexpr (std::is_same_v<T, Pseudocontraction>) {
                out["N"] = complex_to_json(v.N);
                out["tau"] = map_to_json(v.tau);
                out["h"] = map_to_json(v.h);
            } else if constexpr (std::is_same_v<T, HodgeData>) {
                out["X"] = complex_to_json(v.X);
                out["t"] = map_to_json(v.t);
                out["h"] = map_to_json(v.h);
            } else {
                out["N"] = complex_to_json(v.N);
                out["M"] = complex_to_json(v.M);
                out["pi"] = map_to_json(v.pi);
                out["nabla"] = map_to_json(v.nabla);
                out["h"] = map_to_json(v.h);
            }
        },
        s);
    return out;
}

Perturbation perturbation_from_json(const Json& j, const ChainComplex& base) {
    const auto& m = base.module();
    return Perturbation{base, map_from_json(member(j, "del", "perturbation"), m, m, -1, "perturbation.del")};
}

Json perturbation_to_json(const Perturbation& p) {
    Json out = Json::object();
    out["del"] = map_to_json(p.del);
    return out;
}

Json report_to_json(const Report& r) {
    Json out = Json::object();
    out["subject"] = r.subject();
    out["passed"] = r.passed();
    Json checks = Json::array();
    for (const auto& c : r.checks()) {
        Json e = Json::object();
        e["label"] = c.label;
        e["passed"] = c.passed;
        if (!c.detail.empty()) e["detail"] = c.detail;
        checks.push_back(std::move(e));
    }
    out["checks"] = std::move(checks);
    return out;
}

Json kit_to_json(const PerturbedKit& kit, const Report& report, const ParsedStructure& perturbed) {
    Json out = Json::object();
    out["kind"] = "kit";
    out["alpha"] = map_to_json(kit.alpha);
    out["beta"] = map_to_json(kit.beta);
    out["t_del"] = map_to_json(kit.t_del);
    out["h_del"] = map_to_json(kit.h_del);
    if (kit.Dcal) out["Dcal"] = map_to_json(*kit.Dcal);
    if (kit.nabla_del) out["nabla_del"] = map_to_json(*kit.nabla_del);
    if (kit.pi_del) out["pi_del"] = map_to_json(*kit.pi_del);
    out["alpha_terms"] = kit.alpha_terms;
    out["beta_terms"] = kit.beta_terms;
    out["report"] = report_to_json(report);
    out["perturbed"] = structure_to_json(perturbed);
    return out;
}

ParsedKit kit_from_json(const Json& j) {
    ParsedStructure perturbed = structure_from_json(member(j, "perturbed", "kit"));
    ModulePtr N;
    ModulePtr M;
    if (auto* p = std::get_if<Pseudocontraction>(&perturbed)) {
        N = p->N.module();
    } else if (auto* w = std::get_if<WeakContraction>(&perturbed)) {
        N = w->N.module();
        M = w->M.module();
    } else {
        const auto& c = expect<Contraction>(perturbed, "a pseudocontraction, weak contraction or contraction");
        N = c.N.module();
        M = c.M.module();
    }
    ParsedKit kit{perturbed,
                  map_from_json(member(j, "alpha", "kit"), N, N, 0, "alpha"),
                  map_from_json(member(j, "beta", "kit"), N, N, 0, "beta"),
                  map_from_json(member(j, "t_del", "kit"), N, N, 0, "t_del"),
                  map_from_json(member(j, "h_del", "kit"), N, N, 1, "h_del"),
                  std::nullopt,
                  std::nullopt,
                  std::nullopt};
    if (M) {
        kit.Dcal = map_from_json(member(j, "Dcal", "kit"), M, M, -1, "Dcal");
        kit.nabla_del = map_from_json(member(j, "nabla_del", "kit"), M, N, 0, "nabla_del");
        kit.pi_del = map_from_json(member(j, "pi_del", "kit"), N, M, 0, "pi_del");
    }
    return kit;
}

Json parse_json_text(const std::string& text, const std::string& location) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Byte offsets are turned into line:column.
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(location + ":" + std::to_string(line) + ":" + std::to_string(col), "invalid JSON");
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json_text(buffer.str(), path);
}

}  // namespace hptkit
