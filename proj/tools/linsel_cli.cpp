// Batch front-end: reads a JSON problem file, dispatches to the library and
// writes a deterministic JSON result.  Exit codes: 0 ok (including infeasible
// or impossible results, which carry certificates), 1 malformed input,
// 2 domain errors.

#include "linsel/json_io.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

int write_output(const linsel::Json& doc, const std::string& path) {
    const std::string text = doc.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
        return 0;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "cannot open " << tmp << "\n";
            return 2;
        }
        out << text;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::cerr << "cannot rename " << tmp << " to " << path << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for polyhedral set-valued maps and their selections"};
    app.require_subcommand(1);

    std::string input_path, output_path;
    linsel::RunFlags flags;

    const std::vector<std::string> kinds = {"tomo",    "select",   "submap",
                                            "riesz",   "simplex",  "envelope",
                                            "right-inverse", "nesting"};
    std::vector<CLI::App*> subs;
    for (const auto& kind : kinds) {
        auto* sub = app.add_subcommand(kind, "run a '" + kind + "' problem file");
        sub->add_option("--input", input_path, "problem file (JSON)")->required();
        sub->add_option("--output", output_path, "result file (defaults to stdout)");
        sub->add_option("--seed", flags.seed, "seed for randomized checks");
        sub->add_option("--depth", flags.depth, "decomposition search depth");
        sub->add_option("--functional-order", flags.functional_order,
                        "comma-separated permutation of the functional list");
        subs.push_back(sub);
    }
    auto* list = app.add_subcommand("list-fixtures", "print the bundled fixture manifest");
    list->add_option("--output", output_path, "result file (defaults to stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) return write_output(linsel::fixture_manifest_json(), output_path);

        std::ifstream in(input_path, std::ios::binary);
        if (!in) {
            std::cerr << "cannot open " << input_path << "\n";
            return 1;
        }
        linsel::Json problem;
        try {
            problem = linsel::Json::parse(in);
        } catch (const linsel::Json::parse_error& e) {
            std::cerr << "parse error: " << e.what() << "\n";
            return 1;
        }

        // The subcommand must match the document's kind.
        std::string kind;
        for (std::size_t i = 0; i < kinds.size(); ++i)
            if (subs[i]->parsed()) kind = kinds[i];
        if (!problem.is_object() || !problem.contains("kind") ||
            problem["kind"] != kind) {
            std::cerr << "problem kind does not match the subcommand\n";
            return 1;
        }

        const linsel::Json result = linsel::run_problem(problem, flags);
        return write_output(result, output_path);
    } catch (const linsel::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
