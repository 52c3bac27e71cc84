/**
 * strata: command-line access to the stratified-space engine.
 *
 *   strata validate <space.json> [--repair-fullness] [-o out.json] [--json]
 *   strata ih --space <space.json> --perversity <spec>
 *   strata construct cone|susp --link <complex.json> [-o out.json]
 *   strata construct product --manifold <complex.json> --space <space.json> [-o out.json]
 *   strata gysin --catalog <name>|--action <action.json> --qbar <k|a..b> [--json]
 *   strata catalog [--dump-catalog <name>]
 *
 * Perversity specs are "zero", "top", "const:<n>", or explicit
 * "<stratum>=<n>[,<stratum>=<n>...]" assignments.  Exit codes: 0 when the
 * requested check passes (or output was produced), 1 when a validation or
 * verification fails, 2 on malformed input.  Sweeps fan out over at most
 * STRATA_THREADS worker threads; output is ordered and byte-deterministic
 * either way.
 */
#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <strata/strata.hpp>

namespace cli {

namespace {

using strata::ActionModel;
using strata::BettiTable;
using strata::Code;
using strata::Perversity;
using strata::StratifiedSpace;

std::string trimmed(BettiTable t)
{
    while (!t.counts.empty() && t.counts.back() == 0)
        t.counts.pop_back();
    return t.to_string();
}

Perversity parse_perversity(const StratifiedSpace& sp, const std::string& spec)
{
    if (spec == "zero" || spec == "top")
        return strata::named_perversity(sp, spec);
    const std::string constant = "const:";
    if (spec.rfind(constant, 0) == 0) {
        try {
            return strata::named_perversity(sp, "constant", std::stoi(spec.substr(constant.size())));
        } catch (const std::logic_error&) {
            throw strata::StrataError(Code::BAD_INPUT, "bad constant perversity: " + spec);
        }
    }
    if (spec.find('=') == std::string::npos)
        throw strata::StrataError(Code::BAD_INPUT, "unknown perversity spec: " + spec);
    std::map<std::string, int> values;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw strata::StrataError(Code::BAD_INPUT, "bad perversity assignment: " + item);
        try {
            values[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
        } catch (const std::logic_error&) {
            throw strata::StrataError(Code::BAD_INPUT, "bad perversity assignment: " + item);
        }
    }
    return Perversity::from_values(sp, std::move(values));
}

std::pair<int, int> parse_qbar_range(const std::string& spec)
{
    try {
        auto dots = spec.find("..", 1);
        if (dots == std::string::npos) {
            int k = std::stoi(spec);
            return {k, k};
        }
        int a = std::stoi(spec.substr(0, dots));
        int b = std::stoi(spec.substr(dots + 2));
        if (a > b)
            throw strata::StrataError(Code::BAD_INPUT, "empty level range: " + spec);
        return {a, b};
    } catch (const std::logic_error&) {
        throw strata::StrataError(Code::BAD_INPUT, "bad level spec: " + spec);
    }
}

int thread_cap()
{
    unsigned hw = std::thread::hardware_concurrency();
    int cap = hw == 0 ? 1 : static_cast<int>(hw);
    if (const char* env = std::getenv("STRATA_THREADS")) {
        try {
            cap = std::max(1, std::stoi(env));
        } catch (const std::logic_error&) {
            throw strata::StrataError(Code::BAD_INPUT, "STRATA_THREADS must be an integer");
        }
    }
    return cap;
}

/** Verify the model at every level of the range, in parallel, in order. */
std::vector<strata::VerifyReport> sweep_verify(const ActionModel& m, int lo, int hi)
{
    size_t count = static_cast<size_t>(hi - lo + 1);
    std::vector<strata::VerifyReport> reports(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                reports[i] = strata::verify(m, Perversity::constant(m.orbit, lo + static_cast<int>(i)));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    int workers = std::min(thread_cap(), static_cast<int>(count));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w)
        pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool)
        t.join();
    for (std::exception_ptr& e : errors)
        if (e)
            std::rethrow_exception(e);
    return reports;
}

std::string verify_line(int level, const strata::VerifyReport& rep)
{
    std::ostringstream os;
    os << "qbar=" << level << (rep.pass ? " PASS" : " FAIL") << " total="
       << trimmed(rep.total_ih) << " orbit=" << trimmed(rep.orbit_ih) << " gysin="
       << trimmed(rep.gysin) << " residues=" << trimmed(rep.residues) << " lower="
       << trimmed(rep.lower_ih) << " step=" << trimmed(rep.step);
    if (!rep.pass) {
        os << " |";
        for (const std::string& f : rep.failures)
            os << " [" << f << "]";
    }
    return os.str();
}

int run_validate(const std::string& file, bool repair, const std::string& out_file, bool as_json)
{
    StratifiedSpace sp = strata::space_from_json(strata::load_json_file(file));
    if (repair)
        sp = strata::repair_fullness(sp);
    if (!out_file.empty())
        strata::save_json_file(out_file, strata::to_json(sp));
    strata::ValidationReport report = validate_pseudomanifold(sp);
    if (as_json) {
        std::cout << strata::dump_canonical(strata::to_json(report));
    } else if (report.ok()) {
        std::cout << "valid\n";
    } else {
        std::cout << "invalid\n";
        for (const auto& [code, detail] : report.problems)
            std::cout << "  " << strata::code_name(code) << ": " << detail << "\n";
    }
    return report.ok() ? 0 : 1;
}

int run_ih(const std::string& file, const std::string& spec)
{
    StratifiedSpace sp = strata::space_from_json(strata::load_json_file(file));
    BettiTable t = strata::ih_betti(sp, parse_perversity(sp, spec));
    std::cout << trimmed(t) << "\n";
    return 0;
}

int run_construct(const std::string& kind, const std::string& link_file,
                  const std::string& manifold_file, const std::string& space_file,
                  const std::string& out_file)
{
    StratifiedSpace result;
    if (kind == "cone" || kind == "susp") {
        if (link_file.empty())
            throw strata::StrataError(Code::BAD_INPUT, kind + " needs --link");
        strata::SimplicialComplex link =
            strata::complex_from_json(strata::load_json_file(link_file));
        result = kind == "cone" ? strata::cone_stratified(link)
                                : strata::suspension_stratified(link);
    } else if (kind == "product") {
        if (manifold_file.empty() || space_file.empty())
            throw strata::StrataError(Code::BAD_INPUT, "product needs --manifold and --space");
        strata::SimplicialComplex manifold =
            strata::complex_from_json(strata::load_json_file(manifold_file));
        StratifiedSpace sp = strata::space_from_json(strata::load_json_file(space_file));
        result = strata::product_stratified(manifold, sp);
    } else {
        throw strata::StrataError(Code::BAD_INPUT, "unknown construction: " + kind);
    }
    if (out_file.empty())
        std::cout << strata::dump_canonical(strata::to_json(result));
    else
        strata::save_json_file(out_file, strata::to_json(result));
    return 0;
}

int run_gysin(const std::string& catalog_name, const std::string& action_file,
              const std::string& qbar_spec, bool as_json)
{
    if (catalog_name.empty() == action_file.empty())
        throw strata::StrataError(Code::BAD_INPUT, "need exactly one of --catalog and --action");
    ActionModel m = catalog_name.empty()
                        ? strata::action_from_json(strata::load_json_file(action_file))
                        : strata::catalog_action(catalog_name);
    auto [lo, hi] = parse_qbar_range(qbar_spec);
    std::vector<strata::VerifyReport> reports = sweep_verify(m, lo, hi);

    bool all_pass = true;
    if (as_json) {
        strata::json out = strata::json::array();
        for (const strata::VerifyReport& rep : reports)
            out.push_back(strata::to_json(rep));
        std::cout << strata::dump_canonical(out);
    }
    for (size_t i = 0; i < reports.size(); ++i) {
        if (!as_json)
            std::cout << verify_line(lo + static_cast<int>(i), reports[i]) << "\n";
        all_pass = all_pass && reports[i].pass;
    }
    return all_pass ? 0 : 1;
}

int run_catalog(const std::string& dump_name)
{
    if (dump_name.empty()) {
        for (const std::string& name : strata::catalog_names())
            std::cout << name << "\n";
        return 0;
    }
    std::cout << strata::dump_canonical(strata::to_json(strata::catalog_action(dump_name)));
    return 0;
}

}  // namespace

/** Entry point on an argv-style list (program name excluded). */
int run(std::vector<std::string> args)
{
    CLI::App app{"intersection (co)homology of stratified pseudomanifolds"};
    app.require_subcommand(1);
    int code = 0;

    auto* validate = app.add_subcommand("validate", "check a space file");
    std::string validate_file, validate_out;
    bool validate_repair = false, validate_json = false;
    validate->add_option("space", validate_file, "strata-space/1 file")->required();
    validate->add_flag("--repair-fullness", validate_repair, "repair before validating");
    validate->add_option("-o", validate_out, "write the (repaired) space here");
    validate->add_flag("--json", validate_json, "machine-readable report");
    validate->callback(
        [&] { code = run_validate(validate_file, validate_repair, validate_out, validate_json); });

    auto* ih = app.add_subcommand("ih", "intersection table of a space");
    std::string ih_file, ih_spec;
    ih->add_option("--space", ih_file, "strata-space/1 file")->required();
    ih->add_option("--perversity", ih_spec, "zero|top|const:<n>|<stratum>=<n>,...")->required();
    ih->callback([&] { code = run_ih(ih_file, ih_spec); });

    auto* construct = app.add_subcommand("construct", "build a stratified space");
    std::string construct_kind, construct_link, construct_manifold, construct_space, construct_out;
    construct->add_option("kind", construct_kind, "cone | susp | product")->required();
    construct->add_option("--link", construct_link, "link complex file (cone, susp)");
    construct->add_option("--manifold", construct_manifold, "manifold complex file (product)");
    construct->add_option("--space", construct_space, "space file (product)");
    construct->add_option("-o", construct_out, "output file (default stdout)");
    construct->callback([&] {
        code = run_construct(construct_kind, construct_link, construct_manifold, construct_space,
                             construct_out);
    });

    auto* gysin = app.add_subcommand("gysin", "verify an action over a level range");
    std::string gysin_catalog, gysin_action, gysin_qbar;
    bool gysin_json = false;
    gysin->add_option("--catalog", gysin_catalog, "catalog action name");
    gysin->add_option("--action", gysin_action, "strata-action/1 file");
    gysin->add_option("--qbar", gysin_qbar, "level or range a..b")->required();
    gysin->add_flag("--json", gysin_json, "machine-readable reports");
    gysin->callback([&] { code = run_gysin(gysin_catalog, gysin_action, gysin_qbar, gysin_json); });

    auto* catalog = app.add_subcommand("catalog", "list or dump the built-in actions");
    std::string catalog_dump;
    catalog->add_option("--dump-catalog", catalog_dump, "dump one action as JSON");
    catalog->callback([&] { code = run_catalog(catalog_dump); });

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const strata::StrataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return code;
}

}  // namespace cli

int main(int argc, char** argv)
{
    return cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
