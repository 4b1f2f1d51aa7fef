/*
   Copyright 2026 The tmod Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// tmod: decide whether t-modules are abelian and pure.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "tmod/analyzer.hpp"
#include "tmod/errors.hpp"
#include "tmod/input.hpp"

namespace {

enum Exit { kOk = 0, kAnalysisError = 1, kInputError = 2, kDisagreement = 3 };

struct Job {
    std::string path;
    tmod::AnalysisReport report;
    std::string error;
    std::string hint;
    int status = kOk;
};

struct AnalyzeArgs {
    std::vector<std::string> files;
    std::optional<std::int64_t> precision;
    std::optional<std::int64_t> precision_cap;
    std::optional<int> max_n;
    std::string format = "json";
    std::string svg;
    std::string out;
    bool check = false;
    unsigned jobs = 0;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void run_one(Job& job, const AnalyzeArgs& args) {
    try {
        const tmod::InputDocument doc = tmod::parse_document(read_file(job.path));
        tmod::AnalysisOptions options = tmod::options_of(doc);
        if (args.precision) options.precision = *args.precision;
        if (args.precision_cap) options.precision_cap = *args.precision_cap;
        if (args.max_n) options.max_n = *args.max_n;
        options.check = options.check || args.check;
        job.report = tmod::decide(tmod::build_module(doc), options);
        if (job.report.check && !job.report.check->agrees) {
            job.status = kDisagreement;
            job.error = job.report.abelian ? "Newton polygon says abelian but no certificate exists for n <= " +
                                                 std::to_string(job.report.check->max_n)
                                           : "Newton polygon says not abelian but a certificate exists";
            job.hint = job.report.abelian ? "raise --max-n" : "raise --precision";
        }
    } catch (const tmod::ParseError& e) {
        job.status = kInputError;
        job.error = e.what();
    } catch (const tmod::NotATModule& e) {
        job.status = kInputError;
        job.error = std::string("not a t-module: ") + e.what();
    } catch (const tmod::PrecisionExhausted& e) {
        job.status = kAnalysisError;
        job.error = e.what();
        job.hint = "raise --precision or --precision-cap to at least " + std::to_string(e.suggested());
    } catch (const tmod::Error& e) {
        job.status = kAnalysisError;
        job.error = e.what();
    } catch (const std::exception& e) {
        job.status = kInputError;
        job.error = e.what();
    }
}

std::string svg_path(const std::string& base, const std::string& input, bool batch) {
    if (!batch) return base;
    const std::filesystem::path p(base);
    const std::string stem = std::filesystem::path(input).stem().string();
    return (p.parent_path() / (p.stem().string() + "-" + stem + p.extension().string())).string();
}

int analyze(const AnalyzeArgs& args) {
    std::vector<Job> jobs(args.files.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) jobs[i].path = args.files[i];

    // Files are independent; workers pull the next index.
    std::atomic<std::size_t> next{0};
    const unsigned n_workers =
        std::max(1u, std::min<unsigned>(args.jobs ? args.jobs : std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(jobs.size())));
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < n_workers; ++w)
        workers.emplace_back([&] {
            for (std::size_t i; (i = next++) < jobs.size();) run_one(jobs[i], args);
        });
    for (auto& t : workers) t.join();

    const bool batch = jobs.size() > 1;
    std::ostringstream out;
    int status = kOk;
    nlohmann::ordered_json all = nlohmann::ordered_json::array();
    for (const Job& job : jobs) {
        status = std::max(status, job.status);
        if (!job.error.empty()) {
            std::cerr << "tmod: " << job.path << ": " << job.error << "\n";
            if (!job.hint.empty()) std::cerr << "  hint: " << job.hint << "\n";
        }
        const bool has_report = job.status == kOk || job.status == kDisagreement;
        if (has_report && !args.svg.empty()) {
            std::vector<tmod::NewtonPolygon> polygons;
            for (std::size_t i = 0; i < job.report.diagonal.size(); ++i)
                if (job.report.diagonal[i].degree() > 0) polygons.push_back(job.report.newton_polygons[i]);
            std::ofstream svg(svg_path(args.svg, job.path, batch), std::ios::binary);
            svg << tmod::to_svg(polygons);
        }
        if (args.format == "text") {
            if (batch) out << "== " << job.path << "\n";
            out << (has_report ? tmod::to_text(job.report) : "  error: " + job.error + "\n");
        } else if (batch) {
            nlohmann::ordered_json entry;
            entry["file"] = job.path;
            if (has_report)
                entry["report"] = tmod::to_json(job.report);
            else
                entry["error"] = job.error;
            all.push_back(entry);
        } else if (has_report) {
            out << tmod::to_json(job.report).dump(2) << "\n";
        }
    }
    if (args.format == "json" && batch) out << all.dump(2) << "\n";

    if (args.out.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream f(args.out, std::ios::binary);
        if (!f) {
            std::cerr << "tmod: cannot write " << args.out << "\n";
            return kInputError;
        }
        f << out.str();
    }
    return status;
}

int normalize(const std::string& path) {
    try {
        std::cout << tmod::render_document(tmod::parse_document(read_file(path)));
        return kOk;
    } catch (const std::exception& e) {
        std::cerr << "tmod: " << path << ": " << e.what() << "\n";
        return kInputError;
    }
}

int selftest(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    int disagreements = 0;
    for (int i = 0; i < count; ++i) {
        const std::uint32_t q = std::uniform_int_distribution<std::uint32_t>(2, 3)(rng);
        const int d = std::uniform_int_distribution<int>(1, 2)(rng);
        const tmod::TModule m = tmod::random_tmodule(rng, q, d, 2);
        tmod::AnalysisOptions options;
        options.max_n = 6;
        options.check = true;
        const tmod::AnalysisReport r = tmod::decide(m, options);
        // Absence of a certificate for small n does not refute "abelian".
        const bool bad = r.abelian ? !r.certificate : r.check->found.has_value();
        if (bad) {
            ++disagreements;
            std::cout << "disagreement on module " << i << " (q = " << q << ", d = " << d << ")\n";
        }
    }
    std::cout << count << " modules, " << disagreements << " disagreements\n";
    return disagreements ? kDisagreement : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decide whether t-modules are abelian, t-finite and pure"};
    app.require_subcommand(1);

    AnalyzeArgs args;
    auto* a = app.add_subcommand("analyze", "Analyze t-module description files");
    a->add_option("files", args.files, "Input files (key/value or JSON)")->required()->check(CLI::ExistingFile);
    a->add_option("--precision", args.precision, "Initial s-adic working precision")->check(CLI::Range(1, 1 << 20));
    a->add_option("--precision-cap", args.precision_cap, "Largest precision tried on restarts")
        ->check(CLI::Range(1, 1 << 20));
    a->add_option("--max-n", args.max_n, "Certificate search budget n <= K")->check(CLI::Range(1, 1 << 20));
    a->add_option("--format", args.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    a->add_option("--svg", args.svg, "Write the Newton polygons as SVG");
    a->add_option("--out", args.out, "Write the report here instead of stdout");
    a->add_option("--jobs", args.jobs, "Files analyzed in parallel (default: all cores)");
    a->add_flag("--check", args.check, "Fail unless the rank conditions agree with the verdict");

    std::string norm_file;
    auto* n = app.add_subcommand("normalize", "Print a description file in canonical form");
    n->add_option("file", norm_file, "Input file")->required()->check(CLI::ExistingFile);

    std::uint64_t seed = 1;
    int count = 50;
    auto* s = app.add_subcommand("selftest", "Cross-check verdicts and certificates on random t-modules");
    s->add_option("--seed", seed, "Random seed");
    s->add_option("--count", count, "Number of modules")->check(CLI::Range(1, 1 << 20));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }
    if (*a) return analyze(args);
    if (*n) return normalize(norm_file);
    return selftest(seed, count);
}
