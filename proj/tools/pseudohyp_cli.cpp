#include "pseudohyp/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kUsage = 2;

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) return false;
    f << text;
    return static_cast<bool>(f);
}

}  // namespace

int main(int argc, char** argv) {
    using namespace pseudohyp;

    CLI::App app{"Maximal surfaces in H^{2,n}: verification, sampling and tables"};
    app.require_subcommand(1);

    std::uint64_t seed = seed_from_env(VerifyOptions{}.seed);

    auto* verify = app.add_subcommand("verify", "run verification suites and emit a JSON report");
    std::string suite = "all", out;
    double tol = -1.0;
    verify->add_option("--suite", suite, "all|fuchsian|hitchin|orbifold|forms|metric");
    verify->add_option("--out", out, "write the JSON report here instead of stdout");
    verify->add_option("--tol", tol, "override the tolerance of every residual check");
    verify->add_option("--seed", seed, "sampling seed (default: PSEUDOHYP_SEED or built-in)");

    auto* sample = app.add_subcommand("sample", "sample an object on a chart grid as CSV");
    std::string object, sample_out;
    std::vector<double> rect;
    int nx = 10, ny = 10;
    sample->add_option("object", object, "f|F|iota_fuchsian|iota_hitchin|g_integrand_block|g_integrand_irr")
        ->required();
    sample->add_option("--rect", rect, "x0 x1 y0 y1")->expected(4)->required();
    sample->add_option("--nx", nx, "points along x");
    sample->add_option("--ny", ny, "points along y");
    sample->add_option("--out", sample_out, "CSV file (default stdout)");

    auto* table = app.add_subcommand("table", "sign tables and centralizer enumerations");
    std::string kind, shape = "so23xso1k", basis = "standard", table_out;
    int n = 2;
    bool json = false;
    table->add_option("kind", kind, "conjugation-A|conjugation-B|conjugation-C|conjugation-Q|conjugation-Id|centralizer")
        ->required();
    table->add_option("--n", n, "ambient n");
    table->add_option("--shape", shape, "so22xso1|so21xso2|so21xso1xso1|so23xso1k");
    table->add_option("--basis", basis, "standard|hitchin");
    table->add_flag("--json", json, "print JSON instead of text");
    table->add_option("--out", table_out, "also write the JSON form here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*verify) {
            VerifyOptions opt;
            opt.seed = seed;
            if (tol >= 0.0) opt.tol = tol;
            auto checks = run_suite(suite, opt);
            std::string doc = report_json(suite, opt, checks).dump(2) + "\n";
            if (out.empty()) {
                std::cout << doc;
            } else {
                if (!write_file(out, doc)) {
                    std::cerr << "cannot write " << out << "\n";
                    return kUsage;
                }
                for (const auto& c : checks)
                    std::cout << c.status << "  " << c.name << "  (" << format_double(c.max_residual) << ")\n";
            }
            return any_failed(checks) ? 1 : 0;
        }
        if (*sample) {
            std::string csv = sample_csv(object, Rect{rect[0], rect[1], rect[2], rect[3]}, nx, ny);
            if (sample_out.empty()) {
                std::cout << csv;
            } else if (!write_file(sample_out, csv)) {
                std::cerr << "cannot write " << sample_out << "\n";
                return kUsage;
            }
            return 0;
        }
        if (*table) {
            auto t = make_table(kind, n, shape, basis);
            std::cout << (json ? t.json.dump(2) + "\n" : t.text);
            if (!table_out.empty() && !write_file(table_out, t.json.dump(2) + "\n")) {
                std::cerr << "cannot write " << table_out << "\n";
                return kUsage;
            }
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kUsage;
}
