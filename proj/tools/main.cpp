#include "commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

namespace {

using namespace gmt::cli;
namespace fs = std::filesystem;

std::vector<std::string> known_names()
{
    std::vector<std::string> out{"list", "run"};
    for (const auto& s : scenarios()) out.push_back(s.name);
    for (const auto& c : file_commands()) {
        if (!is_scenario(c.name)) out.push_back(c.name);
    }
    return out;
}

std::string summary_of(const std::string& name)
{
    for (const auto& c : file_commands()) {
        if (c.name == name) return c.summary;
    }
    return {};
}

void print_list(bool json)
{
    if (json) {
        Json j{{"scenarios", Json::array()}, {"commands", Json::array()}};
        for (const auto& s : scenarios()) j["scenarios"].push_back({{"name", s.name}, {"summary", s.summary}});
        for (const auto& c : file_commands()) j["commands"].push_back({{"name", c.name}, {"summary", c.summary}});
        std::cout << gmt::io::dump(j);
        return;
    }
    std::cout << "scenarios:\n";
    for (const auto& s : scenarios()) std::cout << "  " << s.name << std::string(16 - std::min<size_t>(15, s.name.size()), ' ') << s.summary << "\n";
    std::cout << "file commands:\n";
    for (const auto& c : file_commands()) std::cout << "  " << c.name << std::string(16 - std::min<size_t>(15, c.name.size()), ' ') << c.summary << "\n";
}

void add_options(CLI::App* app, Options& o)
{
    app->add_option("--seed", o.seed, "random seed")->envname("GMT_SEED");
    app->add_option("--tol", o.identity_tol, "tolerance of the exact identities");
    app->add_option("--agreement-tol", o.agreement_tol, "relative tolerance of numerical agreement");
    app->add_option("--koch-level", o.koch_level, "deepest Koch level")->check(CLI::Range(0, kMaxKochLevel));
    app->add_option("--eps", o.schedule, "transport step schedule");
    app->add_option("--final-eps", o.final_eps, "transport final step");
}

void add_files(CLI::App* app, FileInputs& in)
{
    app->add_option("--complex", in.complex, "complex file");
    app->add_option("--chain", in.chain, "chain file");
    app->add_option("--map", in.map, "map file");
    app->add_option("--field", in.field, "field file");
    app->add_option("--body", in.body, "body chain file");
    app->add_option("--motion", in.motion, "motion file");
    app->add_option("--table", in.table, "flux table file");
    app->add_option("--target", in.target, "target chain file");
    app->add_option("--voxels", in.voxels, "voxel set file");
    app->add_option("--refinement", in.refinement, "refining chain files, coarse to fine");
    app->add_option("--point", in.point, "point coordinates");
    app->add_option("--radius", in.radius, "largest radius");
    app->add_option("--lip", in.lip, "Lipschitz constant of the extension");
}

int emit(const Json& report, const std::string& out)
{
    if (out.empty()) {
        std::cout << gmt::io::dump(report);
    } else {
        gmt::io::write_json(out, report);
        std::cout << report.value("scenario", report.value("command", std::string())) << ": "
                  << (report.value("pass", false) ? "pass" : "FAIL") << "\n";
    }
    return report.value("pass", false) ? 0 : 1;
}

int run_many(std::vector<std::string> names, const std::string& dir, int jobs, const Options& o)
{
    if (names.empty() || (names.size() == 1 && names[0] == "all")) {
        names.clear();
        for (const auto& s : scenarios()) names.push_back(s.name);
    }
    for (const auto& n : names) {
        if (!is_scenario(n)) {
            std::vector<std::string> all;
            for (const auto& s : scenarios()) all.push_back(s.name);
            std::string hint = nearest_match(n, all);
            std::cerr << "unknown scenario '" << n << "'" << (hint.empty() ? "" : ", did you mean '" + hint + "'?") << "\n";
            return 2;
        }
    }
    if (!dir.empty()) fs::create_directories(dir);
    std::vector<Json> reports(names.size());
    std::size_t next = 0;
    std::mutex lock;
    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> g(lock);
                if (next == names.size()) return;
                i = next++;
            }
            try {
                reports[i] = run_scenario(names[i], o);
            } catch (const std::exception& e) {
                reports[i] = {{"scenario", names[i]}, {"error", e.what()}, {"pass", false}};
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    bool ok = true;
    for (std::size_t i = 0; i < names.size(); ++i) {
        bool pass = reports[i].value("pass", false);
        ok = ok && pass;
        if (!dir.empty()) gmt::io::write_json(fs::path(dir) / (names[i] + ".json"), reports[i]);
        std::cout << names[i] << ": " << (pass ? "pass" : "FAIL");
        if (reports[i].contains("error")) std::cout << " (" << reports[i]["error"].get<std::string>() << ")";
        std::cout << "\n";
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    if (argc == 1) {
        print_list(false);
        return 0;
    }
    const std::string first = argv[1];
    if (!first.empty() && first[0] != '-') {
        auto names = known_names();
        if (std::find(names.begin(), names.end(), first) == names.end()) {
            std::string hint = nearest_match(first, names);
            std::cerr << "unknown command '" << first << "'" << (hint.empty() ? "" : ", did you mean '" + hint + "'?")
                      << "\nrun 'gmt list' for the available names\n";
            return 2;
        }
    }

    CLI::App app{"Flat chains, sharp fields and Cauchy fluxes"};
    app.require_subcommand(1);
    Options o;
    FileInputs in;
    std::string out;
    bool as_json = false;
    std::vector<std::string> run_names;
    int jobs = 1;

    auto* list = app.add_subcommand("list", "list scenarios and file commands");
    list->add_flag("--json", as_json, "machine readable listing");

    auto* run = app.add_subcommand("run", "run several scenarios");
    run->add_option("names", run_names, "scenario names or 'all'");
    run->add_option("--out", out, "directory for the reports");
    run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    add_options(run, o);

    std::vector<CLI::App*> singles;
    for (const auto& name : known_names()) {
        if (name == "list" || name == "run") continue;
        std::string summary;
        for (const auto& s : scenarios()) {
            if (s.name == name) summary = s.summary;
        }
        if (summary.empty()) summary = summary_of(name);
        auto* sub = app.add_subcommand(name, summary);
        add_options(sub, o);
        sub->add_option("--out", out, "write the report to this file");
        if (is_file_command(name)) {
            add_files(sub, in);
            if (name == "balance" || name == "virtual-work") {
                sub->add_option("--form", in.forms, "one form file per flux component");
            } else {
                sub->add_option("--form", in.form, "form file");
            }
        }
        singles.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (list->parsed()) {
            print_list(as_json);
            return 0;
        }
        if (run->parsed()) return run_many(run_names, out, jobs, o);
        for (auto* sub : singles) {
            if (!sub->parsed()) continue;
            const std::string name = sub->get_name();
            if (wants_files(name, in)) return emit(run_file_command(name, in, o), out);
            if (!is_scenario(name)) {
                std::cerr << name << " needs input files, see 'gmt " << name << " --help'\n";
                return 2;
            }
            return emit(run_scenario(name, o), out);
        }
    } catch (const gmt::io::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
