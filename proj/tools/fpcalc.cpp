#include "fpcalc/dsl.hpp"
#include "fpcalc/engine.hpp"
#include "fpcalc/render.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConsistency = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIndeterminate = 3;

struct CliError {
    int code;
    std::string message;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw CliError{kExitUsage, "cannot open " + path};
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fpcalc::ProblemDoc parse_or_throw(const std::string& text, const std::string& origin) {
    auto result = fpcalc::parse_problem(text);
    if (!result.ok()) {
        std::string msg;
        for (const auto& d : result.diagnostics)
            msg += origin + ":" + std::to_string(d.span.line) + ":" + std::to_string(d.span.column) +
                   ": " + d.message + "\n";
        throw CliError{kExitUsage, msg};
    }
    return std::move(*result.doc);
}

void validate_or_throw(const fpcalc::ProblemDoc& doc) {
    std::string msg;
    for (const auto& a : doc.algebras)
        for (const auto& d : fpcalc::validate(a, doc.field_d)) msg += d.path + ": " + d.message + "\n";
    if (!msg.empty()) throw CliError{kExitUsage, msg};
}

// Maps engine exceptions onto exit codes; shared by every subcommand.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const CliError& e) {
        std::cerr << e.message;
        if (!e.message.empty() && e.message.back() != '\n') std::cerr << '\n';
        return e.code;
    } catch (const fpcalc::ValidationError& e) {
        for (const auto& d : e.diagnostics) {
            if (!d.path.empty()) std::cerr << d.path << ": ";
            std::cerr << d.message << "\n";
        }
        return kExitUsage;
    } catch (const fpcalc::CapExceededError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const fpcalc::IndeterminateError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "collected radical generators:";
        for (const auto& g : e.radical_generators) std::cerr << " " << g.str();
        std::cerr << "\nnon-radical ratios:";
        for (const auto& r : e.non_radical) std::cerr << " " << r;
        std::cerr << "\n";
        return kExitIndeterminate;
    } catch (const fpcalc::ConsistencyError& e) {
        std::cerr << "internal consistency violation: " << e.what() << "\n";
        return kExitConsistency;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
}

fpcalc::RadicalReal parse_radical_arg(const std::string& text, bool allow_large) {
    auto r = fpcalc::parse_radical_literal(text, {allow_large});
    if (!r) throw CliError{kExitUsage, "bad radical literal: " + text};
    return *r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"free product decomposition calculator"};
    app.require_subcommand(1);

    std::string input;
    bool as_json = false, with_trace = false, allow_large = false, do_classify = false;
    std::uint64_t cap = 1'000'000;
    std::vector<std::string> radical_args, rational_args;
    std::string contains_arg, intersect_arg, out_path;

    auto* classify_cmd = app.add_subcommand("classify", "decompose a free product problem");
    classify_cmd->add_option("file", input, "problem file or - for stdin")->required();
    classify_cmd->add_flag("--json", as_json, "emit the JSON schema");
    classify_cmd->add_flag("--trace", with_trace, "include the derivation trace in ascii output");
    classify_cmd->add_option("--cap", cap, "mating enumeration cap (default 10^6)");
    classify_cmd->add_flag("--allow-slow-factorization", allow_large,
                           "factor integers above 2^64");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "point spectrum report per algebra");
    spectrum_cmd->add_option("file", input)->required();
    spectrum_cmd->add_flag("--allow-slow-factorization", allow_large);

    auto* subgroup_cmd = app.add_subcommand("subgroup", "classify a multiplicative subgroup");
    subgroup_cmd->add_option("generators", radical_args, "radical literals, e.g. 1/2 2^(3/2)")
        ->required();
    subgroup_cmd->add_option("--contains", contains_arg, "membership query");
    subgroup_cmd->add_option("--cyclic-intersect", intersect_arg,
                             "least N with lambda^N in the subgroup");
    subgroup_cmd->add_flag("--allow-slow-factorization", allow_large);

    auto* construct_cmd =
        app.add_subcommand("construct-sd", "build a free product with prescribed Sd group");
    construct_cmd->add_option("generators", rational_args, "rationals in (0,1)")->required();
    construct_cmd->add_flag("--classify", do_classify, "also classify the constructed problem");

    auto* ntr_cmd = app.add_subcommand("ntr", "non-traciality count per algebra");
    ntr_cmd->add_option("file", input)->required();

    auto* batch_cmd = app.add_subcommand("batch", "classify every .fp file in a directory");
    batch_cmd->add_option("dir", input)->required();
    batch_cmd->add_option("--out", out_path, "output file, one JSON record per problem")
        ->required();
    batch_cmd->add_option("--cap", cap);
    batch_cmd->add_flag("--allow-slow-factorization", allow_large);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    const fpcalc::ClassifyOptions opts{cap, allow_large, false};

    if (classify_cmd->parsed()) {
        return guarded([&] {
            const auto doc = parse_or_throw(read_input(input), input);
            const auto dec = fpcalc::classify(doc.algebras, opts);
            std::cout << fpcalc::render_decomposition(
                dec, as_json ? fpcalc::RenderMode::Json : fpcalc::RenderMode::Ascii, with_trace);
            return kExitOk;
        });
    }

    if (spectrum_cmd->parsed()) {
        return guarded([&] {
            const auto doc = parse_or_throw(read_input(input), input);
            validate_or_throw(doc);
            for (const auto& a : doc.algebras)
                std::cout << fpcalc::render_spectrum_report(
                    a.name, fpcalc::point_spectrum(a, {allow_large}));
            return kExitOk;
        });
    }

    if (subgroup_cmd->parsed()) {
        return guarded([&] {
            std::vector<fpcalc::RadicalReal> gens;
            for (const auto& s : radical_args) gens.push_back(parse_radical_arg(s, allow_large));
            const auto group = fpcalc::MultSubgroup::generate(gens);
            const auto cls = group.classify();
            if (cls.is_trivial()) {
                std::cout << "trivial (rank 0)\n";
            } else if (cls.is_cyclic()) {
                char buf[48];
                std::snprintf(buf, sizeof(buf), "%.6g", cls.lambda->approx());
                std::cout << "cyclic (rank 1), lambda = " << cls.lambda->str() << " (≈ " << buf
                          << ")\n";
            } else {
                std::cout << "dense (rank " << cls.rank << "), generators:";
                for (std::size_t i = 0; i < group.rank(); ++i)
                    std::cout << " " << group.basis_radical(i).str();
                std::cout << "\n";
            }
            if (!contains_arg.empty()) {
                const auto x = parse_radical_arg(contains_arg, allow_large);
                std::cout << "contains " << x.str() << ": " << (group.contains(x) ? "yes" : "no")
                          << "\n";
            }
            if (!intersect_arg.empty()) {
                const auto lambda = parse_radical_arg(intersect_arg, allow_large);
                const auto result = fpcalc::cyclic_intersection(lambda, group);
                if (result.is_trivial())
                    std::cout << "lambda^Z intersection: trivial\n";
                else
                    std::cout << "lambda^Z intersection: N = " << result.power_index->str() << "\n";
            }
            return kExitOk;
        });
    }

    if (construct_cmd->parsed()) {
        return guarded([&] {
            std::vector<fpcalc::Rational> gens;
            for (const auto& s : rational_args) {
                auto r = fpcalc::parse_rational_literal(s);
                if (!r) throw CliError{kExitUsage, "bad rational literal: " + s};
                gens.push_back(*r);
            }
            fpcalc::ProblemDoc doc;
            doc.algebras = fpcalc::construct_with_sd(gens);
            std::cout << fpcalc::render_problem(doc);
            if (do_classify) {
                const auto dec = fpcalc::classify_constructed(gens, opts);
                std::cout << fpcalc::render_decomposition(dec, fpcalc::RenderMode::Ascii, false);
            }
            return kExitOk;
        });
    }

    if (ntr_cmd->parsed()) {
        return guarded([&] {
            const auto doc = parse_or_throw(read_input(input), input);
            validate_or_throw(doc);
            for (const auto& a : doc.algebras)
                std::cout << a.name << ": " << fpcalc::ntr(a) << "\n";
            return kExitOk;
        });
    }

    if (batch_cmd->parsed()) {
        return guarded([&] {
            namespace fs = std::filesystem;
            if (!fs::is_directory(input)) throw CliError{kExitUsage, "not a directory: " + input};
            std::vector<fs::path> files;
            for (const auto& entry : fs::directory_iterator(input))
                if (entry.is_regular_file() && entry.path().extension() == ".fp")
                    files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw CliError{kExitUsage, "cannot write " + out_path};
            for (const auto& path : files) {
                const std::string name = path.filename().string();
                nlohmann::ordered_json rec;
                rec["file"] = name;
                try {
                    const auto doc = parse_or_throw(read_input(path.string()), name);
                    const auto dec = fpcalc::classify(doc.algebras, opts);
                    rec["status"] = "ok";
                    rec["decomposition"] =
                        nlohmann::ordered_json::parse(fpcalc::decomposition_to_json_line(dec));
                } catch (const CliError& e) {
                    rec["status"] = "parse_error";
                    rec["error"] = e.message;
                } catch (const fpcalc::ValidationError& e) {
                    rec["status"] = "invalid";
                    std::string msg;
                    for (const auto& d : e.diagnostics) msg += d.path + ": " + d.message + "; ";
                    rec["error"] = msg;
                } catch (const fpcalc::IndeterminateError& e) {
                    rec["status"] = "indeterminate";
                    rec["error"] = e.what();
                } catch (const std::exception& e) {
                    rec["status"] = "error";
                    rec["error"] = e.what();
                }
                out << rec.dump() << "\n";
            }
            return kExitOk;
        });
    }

    return kExitUsage;
}
