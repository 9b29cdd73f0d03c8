// mslab CLI: exact divisor-power summation, error-term scans, zeta moment
// integrals, Estermann values and the randomized lemma verifiers, with
// deterministic CSV/JSON/SVG artifacts.
//
// Exit codes: 0 ok, 2 validation, 3 precision, 4 resource guard.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mslab/cli.hpp"
#include "mslab/errors.hpp"
#include "mslab/version.hpp"

namespace {

int fail(const char* type, const std::string& message, int code) {
    nlohmann::ordered_json err;
    err["error"] = {{"type", type}, {"message", message}};
    std::cerr << err.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (!args.empty() && (args[0] == "--version" || args[0] == "-V")) {
        std::cout << "mslab " << mslab::kVersion << "\n";
        return 0;
    }
    try {
        mslab::cli::RunConfig cfg = mslab::cli::parse_command_line(args);
        mslab::cli::run(cfg, std::cout, std::cerr);
        return 0;
    } catch (const CLI::CallForHelp&) {
        // re-run parse through CLI11's own help printer
        CLI::App app{"divisor mean-square laboratory"};
        std::cout << "usage: mslab <sum|scan|constants|moments|estermann|verify|report> [options]\n"
                     "  see README.md for the full grammar; every subcommand accepts\n"
                     "  --cache-dir, --threads, --seed, --config, --summary\n";
        return 0;
    } catch (const mslab::IntegrityError& e) {
        return fail("integrity", e.what(), 2);
    } catch (const mslab::ValidationError& e) {
        return fail("validation", e.what(), 2);
    } catch (const mslab::PrecisionError& e) {
        return fail("precision", e.what(), 3);
    } catch (const mslab::ResourceError& e) {
        return fail("resource", e.what(), 4);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 1);
    }
}
