// hptkit command-line front end.
// Exit status: 0 pass, 1 axiom failure, 2 input error, 3 nontermination.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hptkit/contraction.hpp"
#include "hptkit/documents.hpp"
#include "hptkit/errors.hpp"
#include "hptkit/excore.hpp"
#include "hptkit/freealg.hpp"
#include "hptkit/json_io.hpp"
#include "hptkit/perturbation.hpp"
#include "hptkit/suite.hpp"
#include "hptkit/transfer.hpp"

using namespace hptkit;

namespace {

struct Options {
    std::string input;
    std::string perturbation;
    std::string emit;
    std::string format = "text";
    std::string algebra;
    std::string suite = "all";
    std::size_t order = 0;
    std::size_t bound = 6;
    std::size_t cap = 0;
    std::uint64_t seed = 1;
    std::size_t instances = 200;
    unsigned threads = 0;
    bool quiet = false;
};

std::optional<std::size_t> cap_of(const Options& o) {
    if (o.cap == 0) return std::nullopt;
    return o.cap;
}

bool json_mode(const Options& o) { return o.format == "json"; }

void write_json(const Json& j, const std::string& path) {
    const std::string text = j.dump(2) + "\n";
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path, "cannot write file");
    out << text;
}

void print_report(const Report& r, const Options& o) {
    if (json_mode(o)) {
        write_json(report_to_json(r), "");
    } else {
        std::cout << r.to_text();
    }
}

int cmd_validate(const Options& o) {
    const Report report = validate_document(read_json_file(o.input));
    print_report(report, o);
    return report.passed() ? 0 : 1;
}

int cmd_perturb(const Options& o) {
    const ParsedStructure s = structure_from_json(read_json_file(o.input));
    const Json pj = read_json_file(o.perturbation);
    const PerturbOutcome r = perturb_document(s, pj, cap_of(o));
    if (r.kit.is_null()) {
        print_report(r.report, o);
        return 1;
    }
    if (!o.emit.empty()) write_json(r.kit, o.emit);
    if (json_mode(o)) {
        write_json(r.kit, "");
    } else {
        std::cout << r.report.to_text();
        std::cout << "alpha terms: " << r.alpha_terms << ", beta terms: " << r.beta_terms << "\n";
    }
    return r.report.passed() ? 0 : 1;
}

int cmd_verify(const Options& o) {
    SuiteConfig cfg;
    cfg.order = o.order ? o.order : default_order();
    cfg.seed = o.seed;
    cfg.instances = o.instances;
    cfg.hodge_instances = std::min<std::size_t>(o.instances, 100);
    cfg.cap = cap_of(o);
    cfg.threads = o.threads;

    std::vector<std::string> names;
    if (o.suite == "all") {
        names = criterion_names();
    } else {
        names.push_back(o.suite);
    }
    const bool traces = o.suite == "structural" && !o.quiet && !json_mode(o);

    bool ok = true;
    Json all = Json::array();
    for (const auto& name : names) {
        const CriterionResult c = run_criterion(name, cfg, traces);
        ok = ok && c.report.passed();
        if (json_mode(o)) {
            all.push_back(criterion_to_json(c));
            continue;
        }
        std::cout << "criterion " << c.number << " " << c.name << ": " << (c.report.passed() ? "PASS" : "FAIL")
                  << "\n";
        std::cout << c.report.to_text();
        if (!o.quiet) {
            for (const auto& line : c.notes) std::cout << "  " << line << "\n";
        }
    }
    if (json_mode(o)) {
        Json out = Json::object();
        out["order"] = cfg.order;
        out["seed"] = cfg.seed;
        out["instances"] = cfg.instances;
        out["passed"] = ok;
        out["criteria"] = std::move(all);
        write_json(out, "");
    } else {
        std::cout << (ok ? "all checks passed" : "some checks failed") << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_enumerate(const Options& o) {
    const std::size_t L = o.order ? o.order : default_order();
    const A0Basis b = enumerate_A0_basis(L);
    if (json_mode(o)) {
        write_json(a0_basis_to_json(b, L), "");
    } else {
        for (const auto& w : b.words) {
            std::cout << word_to_string(w.word) << "  " << shape_name(w.shape) << "  " << w.monomial << "\n";
        }
        std::cout << "total: " << b.words.size() << " (oracle rank " << b.oracle_rank << ")\n";
    }
    return 0;
}

int cmd_transfer(const Options& o) {
    const Algebra algebra = parse_algebra(o.algebra);
    const TransferResult t = run_transfer(algebra, o.bound, cap_of(o));
    const Json out = transfer_to_json(t);
    if (!o.emit.empty()) write_json(out, o.emit);
    if (json_mode(o)) {
        write_json(out, "");
    } else {
        std::cout << t.report.to_text();
        for (const auto& d : t.diagnostics) std::cout << "  " << d << "\n";
        if (t.nontermination) std::cout << "nontermination: " << *t.nontermination << "\n";
    }
    if (t.nontermination) return 3;
    return t.passed() ? 0 : 1;
}

int cmd_homology(const Options& o) {
    const ParsedStructure s = structure_from_json(read_json_file(o.input));
    const auto* c = std::get_if<ChainComplex>(&s);
    if (!c) throw ParseError("kind", "homology expects a complex");
    require_complex(*c, "input");
    const Contraction h = homology_contraction(*c);
    if (!o.emit.empty()) write_json(structure_to_json(h), o.emit);
    const auto betti = betti_numbers(*c);
    if (json_mode(o)) {
        Json b = Json::object();
        for (const auto& [deg, n] : betti) b[std::to_string(deg)] = n;
        Json out = Json::object();
        out["betti"] = std::move(b);
        out["contraction"] = structure_to_json(h);
        write_json(out, "");
    } else {
        for (const auto& [deg, n] : betti) std::cout << "H_" << deg << ": " << n << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hptkit: exact homological perturbation toolkit"};
    app.require_subcommand(1);
    Options o;

    auto add_format = [&o](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };

    auto* validate = app.add_subcommand("validate", "Check the axioms of a complex or structure");
    validate->add_option("--input", o.input, "Structure JSON")->required();
    add_format(validate);

    auto* perturb = app.add_subcommand("perturb", "Apply the perturbation lemma");
    perturb->add_option("--input", o.input, "Structure JSON")->required();
    perturb->add_option("--perturbation", o.perturbation, "Perturbation JSON")->required();
    perturb->add_option("--cap", o.cap, "Neumann series cap (default 1 + dim N)");
    perturb->add_option("--emit", o.emit, "Write the kit JSON here");
    add_format(perturb);

    auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
    verify->add_option("suite", o.suite, "Suite name or 'all'");
    verify->add_option("--order", o.order, "Truncation order (default 8 or HPTKIT_DEFAULT_ORDER)");
    verify->add_option("--seed", o.seed, "Base seed of the random instances");
    verify->add_option("--instances", o.instances, "Number of random instances");
    verify->add_option("--cap", o.cap, "Neumann series cap");
    verify->add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)");
    verify->add_flag("--quiet", o.quiet, "Omit traces and notes");
    add_format(verify);

    auto* enumerate = app.add_subcommand("enumerate", "List the degree-zero basis words");
    enumerate->add_option("--order", o.order, "Length bound L");
    add_format(enumerate);

    auto* transfer = app.add_subcommand("transfer", "Contract a truncated realization onto the ground field");
    transfer->add_option("--algebra", o.algebra, "H, P, A or Ax")->required();
    transfer->add_option("--bound", o.bound, "Length bound");
    transfer->add_option("--cap", o.cap, "Neumann series cap");
    transfer->add_option("--emit", o.emit, "Write the contraction JSON here");
    add_format(transfer);

    auto* homology = app.add_subcommand("homology", "Contract a complex onto its homology");
    homology->add_option("--input", o.input, "Complex JSON")->required();
    homology->add_option("--emit", o.emit, "Write the contraction JSON here");
    add_format(homology);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*validate) return cmd_validate(o);
        if (*perturb) return cmd_perturb(o);
        if (*verify) return cmd_verify(o);
        if (*enumerate) return cmd_enumerate(o);
        if (*transfer) return cmd_transfer(o);
        if (*homology) return cmd_homology(o);
    } catch (const std::exception& e) {
        const int code = exit_code_for(std::current_exception());
        std::cerr << "error: " << e.what() << "\n";
        return code;
    }
    return 2;
}
