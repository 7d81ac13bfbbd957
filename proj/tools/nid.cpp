// nid: information-distance toolkit CLI.
//
// Subcommands: ncd, index, nwd, cluster, multiset, check-compressor.
// Exit codes: 0 success, 2 usage, 3 data-domain error, 4 external-tool
// failure. Stdout carries data only; diagnostics go to stderr.

#include "nid/compressor.hpp"
#include "nid/distance_matrix.hpp"
#include "nid/errors.hpp"
#include "nid/multilist.hpp"
#include "nid/ncd.hpp"
#include "nid/nwd.hpp"
#include "nid/quartet.hpp"
#include "nid/webclient.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitExternal = 4;

struct CommonOptions {
    std::string compressor = "builtin";
    std::string external_cmd;
    std::string test_compressor;
    std::uint64_t seed = 0;
    std::uint64_t budget = 2000;
    std::uint32_t restarts = 8;
    std::uint64_t n_factor = 0;
    std::string format;
    std::string cache_dir = ".nid-cache";
    double slack = -1.0;
    std::string output;
};

std::unique_ptr<nid::Compressor> make_compressor(const CommonOptions& opt) {
    if (opt.test_compressor == "rle") return std::make_unique<nid::RunLengthCompressor>();
    if (!opt.test_compressor.empty())
        throw CLI::ValidationError("--test-compressor", "unknown test compressor: " + opt.test_compressor);
    if (opt.compressor == "external" && opt.external_cmd.empty())
        throw CLI::ValidationError("--external-cmd", "external compressor needs a command template");
    if (!opt.external_cmd.empty() || opt.compressor == "external")
        return std::make_unique<nid::ExternalCompressor>(opt.external_cmd);
    if (opt.compressor == "builtin") return std::make_unique<nid::BuiltinLzCompressor>();
    throw CLI::ValidationError("--compressor", "unknown compressor: " + opt.compressor);
}

std::string read_file(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw nid::ValidationError("cannot read file: " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Directory argument expands to its regular files, sorted by name.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<fs::path> files;
    for (const auto& in : inputs) {
        if (fs::is_directory(in)) {
            for (const auto& entry : fs::directory_iterator(in))
                if (entry.is_regular_file()) files.push_back(entry.path());
        } else {
            files.push_back(in);
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

// Whole-file write with no partial output on failure.
void write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty() || out_path == "-") {
        std::cout << payload;
        return;
    }
    const fs::path final_path(out_path);
    const fs::path tmp = final_path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f << payload;
        if (!f) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw nid::ValidationError("cannot write output file: " + out_path);
        }
    }
    fs::rename(tmp, final_path);
}

std::vector<nid::DataObject> load_corpus(const std::vector<fs::path>& files) {
    std::vector<nid::DataObject> corpus;
    for (const auto& f : files) corpus.push_back({f.filename().string(), read_file(f)});
    return corpus;
}

int cmd_ncd(const std::vector<std::string>& inputs, const CommonOptions& opt) {
    const auto files = expand_inputs(inputs);
    if (files.size() < 2) {
        std::cerr << "nid ncd: need at least 2 input files\n";
        return kExitUsage;
    }
    const auto compressor = make_compressor(opt);
    const auto matrix = nid::ncd_matrix(load_corpus(files), *compressor);
    std::ostringstream out;
    nid::write_matrix_tsv(out, matrix);
    write_output(opt.output, out.str());
    return 0;
}

int cmd_index(const std::string& doc_dir, const std::string& terms_file,
              const CommonOptions& opt) {
    const auto files = expand_inputs({doc_dir});
    if (files.empty()) {
        std::cerr << "nid index: no documents in " << doc_dir << "\n";
        return kExitUsage;
    }
    std::vector<std::pair<std::string, std::string>> docs;
    for (const auto& f : files) docs.emplace_back(f.filename().string(), read_file(f));

    std::vector<std::string> extra;
    if (!terms_file.empty()) {
        std::ifstream tf(terms_file);
        if (!tf) throw nid::ValidationError("cannot read terms file: " + terms_file);
        std::string line;
        while (std::getline(tf, line))
            if (!line.empty()) extra.push_back(line);
    }

    auto index = nid::CorpusIndex::build(docs, extra);
    if (opt.n_factor > 0) index.set_normalizer(opt.n_factor);
    std::ostringstream out;
    index.save(out);
    write_output(opt.output, out.str());
    return 0;
}

class LiveProvider final : public nid::FrequencyProvider {
public:
    LiveProvider(nid::LiveEndpointConfig config, std::uint64_t n)
        : config_(std::move(config)), n_(n) {}

    std::uint64_t count(const std::string& term) const override {
        return nid::live_hit_count(term, config_);
    }
    std::uint64_t pair_count(const std::string& a, const std::string& b) const override {
        if (a == b) return count(a);
        return nid::live_hit_count(a <= b ? a + " " + b : b + " " + a, config_);
    }
    std::uint64_t normalizer() const override { return n_; }
    std::uint64_t page_count() const override { return n_; }

private:
    nid::LiveEndpointConfig config_;
    std::uint64_t n_;
};

int cmd_nwd(const std::vector<std::string>& terms, const std::string& index_file,
            const std::string& live_url, const std::string& count_path, int timeout,
            const CommonOptions& opt) {
    if (terms.size() < 2) {
        std::cerr << "nid nwd: need at least 2 terms\n";
        return kExitUsage;
    }
    std::unique_ptr<nid::FrequencyProvider> provider;
    std::unique_ptr<nid::CorpusIndex> index;
    if (!index_file.empty()) {
        std::ifstream f(index_file);
        if (!f) throw nid::ValidationError("cannot read index file: " + index_file);
        index = std::make_unique<nid::CorpusIndex>(nid::CorpusIndex::load(f));
        if (opt.n_factor > 0) index->set_normalizer(opt.n_factor);
    } else if (!live_url.empty()) {
        if (opt.n_factor == 0) {
            std::cerr << "nid nwd: --n-factor is required in live mode\n";
            return kExitUsage;
        }
        provider = std::make_unique<LiveProvider>(
            nid::LiveEndpointConfig{live_url, count_path, opt.cache_dir, timeout}, opt.n_factor);
    } else {
        std::cerr << "nid nwd: pass --index FILE or --live-url TEMPLATE\n";
        return kExitUsage;
    }

    const nid::FrequencyProvider& p = index ? static_cast<nid::FrequencyProvider&>(*index) : *provider;
    const auto matrix = nid::nwd_matrix(terms, p);
    std::ostringstream out;
    nid::write_matrix_tsv(out, matrix);
    write_output(opt.output, out.str());
    return 0;
}

int cmd_cluster(const std::string& matrix_file, const std::string& score_out,
                const CommonOptions& opt) {
    nid::DistanceMatrix matrix;
    if (matrix_file == "-") {
        matrix = nid::read_matrix_tsv(std::cin);
    } else {
        std::ifstream f(matrix_file);
        if (!f) throw nid::ValidationError("cannot read matrix file: " + matrix_file);
        matrix = nid::read_matrix_tsv(f);
    }
    if (matrix.size() < 4) {
        std::cerr << "nid cluster: the quartet method requires n >= 4 objects, got n="
                  << matrix.size() << "\n";
        return kExitUsage;
    }
    matrix.validate();

    const auto result = nid::hill_climb(matrix, opt.seed, opt.budget, opt.restarts);
    std::ostringstream score;
    score.precision(9);
    score << "S(T)=" << result.score << "\n";
    if (score_out.empty())
        std::cerr << score.str();
    else
        write_output(score_out, score.str());

    const std::string payload =
        (opt.format == "dot") ? result.tree.to_dot() : result.tree.to_newick() + "\n";
    write_output(opt.output, payload);
    return 0;
}

int cmd_multiset(const std::vector<std::string>& inputs, const CommonOptions& opt) {
    const auto files = expand_inputs(inputs);
    if (files.size() < 2) {
        std::cerr << "nid multiset: need at least 2 input files\n";
        return kExitUsage;
    }
    const auto compressor = make_compressor(opt);
    std::vector<std::string> items;
    for (const auto& f : files) items.push_back(read_file(f));
    const auto list = nid::StringList::canonical_order(std::move(items));
    const auto rep = nid::check_sandwich(list, *compressor, opt.slack);

    std::ostringstream out;
    char buf[256];
    if (opt.format == "tsv") {
        std::snprintf(buf, sizeof buf,
                      "e_min_est\t%.6f\ne_max_est\t%.6f\npairwise_bound\t%.6f\nslack\t%.6f\n"
                      "sandwich_ok\t%s\n",
                      rep.e_min_est, rep.e_max_est, rep.pairwise_bound, rep.slack_used,
                      rep.sandwich_ok ? "true" : "false");
    } else {
        std::snprintf(buf, sizeof buf,
                      "E_min estimate:  %.2f bytes\nE_max estimate:  %.2f bytes\n"
                      "Pairwise bound:  %.2f bytes\nSlack:           %.2f bytes\n"
                      "Sandwich check:  %s\n",
                      rep.e_min_est, rep.e_max_est, rep.pairwise_bound, rep.slack_used,
                      rep.sandwich_ok ? "ok" : "VIOLATED");
    }
    write_output(opt.output, buf);
    return 0;
}

int cmd_check_compressor(const std::string& samples_dir, const CommonOptions& opt) {
    const auto files = expand_inputs({samples_dir});
    if (files.size() < 2) {
        std::cerr << "nid check-compressor: need at least 2 sample files\n";
        return kExitUsage;
    }
    std::vector<std::string> contents;
    for (const auto& f : files) contents.push_back(read_file(f));
    std::vector<std::pair<std::string, std::string>> samples;
    for (std::size_t i = 0; i < contents.size(); ++i)
        for (std::size_t j = i + 1; j < contents.size(); ++j)
            samples.emplace_back(contents[i], contents[j]);

    const auto compressor = make_compressor(opt);
    const auto rep = nid::check_normality(*compressor, samples);
    std::ostringstream out;
    out << "compressor:              " << compressor->name() << "\n"
        << "sample pairs:            " << rep.sample_count << "\n"
        << "idempotency gap:         " << rep.idempotency_gap << " bytes\n"
        << "monotonicity violations: " << rep.monotonicity_violations << "\n"
        << "symmetry gap:            " << rep.symmetry_gap << " bytes\n";
    write_output(opt.output, out.str());
    return 0;
}

void add_compressor_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--compressor", opt.compressor, "Compressor: builtin or external");
    cmd->add_option("--external-cmd", opt.external_cmd,
                    "External compressor command (stdin -> compressed stdout)");
    cmd->add_option("--test-compressor", opt.test_compressor)->group(""); // hidden oracle hook
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compression- and frequency-based similarity distances and quartet clustering"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::vector<std::string> inputs;
    std::string doc_dir, terms_file, index_file, live_url, count_path, matrix_file, score_out;
    int timeout = 10;

    auto* ncd_cmd = app.add_subcommand("ncd", "Pairwise NCD matrix over files");
    ncd_cmd->add_option("inputs", inputs, "Input files or a directory")->required();
    ncd_cmd->add_option("-o,--output", opt.output, "Output file (default stdout)");
    add_compressor_flags(ncd_cmd, opt);

    auto* index_cmd = app.add_subcommand("index", "Build a frequency index from documents");
    index_cmd->add_option("docdir", doc_dir, "Directory of documents")->required();
    index_cmd->add_option("--terms", terms_file, "File of extra (phrase) terms, one per line");
    index_cmd->add_option("--n-factor", opt.n_factor, "Override normalizer N (default M)");
    index_cmd->add_option("-o,--output", opt.output, "Output file (default stdout)");

    auto* nwd_cmd = app.add_subcommand("nwd", "Pairwise NWD matrix over terms");
    nwd_cmd->add_option("terms", inputs, "Search terms")->required();
    nwd_cmd->add_option("--index", index_file, "Frequency index file");
    nwd_cmd->add_option("--live-url", live_url, "Endpoint URL template with {query}");
    nwd_cmd->add_option("--count-path", count_path, "Dot path to the count in the JSON response");
    nwd_cmd->add_option("--cache-dir", opt.cache_dir, "Hit-count cache directory");
    nwd_cmd->add_option("--timeout", timeout, "Request timeout in seconds");
    nwd_cmd->add_option("--n-factor", opt.n_factor, "Override normalizer N");
    nwd_cmd->add_option("-o,--output", opt.output, "Output file (default stdout)");

    auto* cluster_cmd = app.add_subcommand("cluster", "Quartet-tree clustering of a distance matrix");
    cluster_cmd->add_option("matrix", matrix_file, "Matrix TSV file, or - for stdin")->required();
    cluster_cmd->add_option("--seed", opt.seed, "Search seed (default 0)");
    cluster_cmd->add_option("--budget", opt.budget, "Consecutive rejections before a restart stops");
    cluster_cmd->add_option("--restarts", opt.restarts, "Independent restarts");
    cluster_cmd->add_option("--format", opt.format, "Output format: newick (default) or dot");
    cluster_cmd->add_option("--score-out", score_out, "Write S(T) here instead of stderr");
    cluster_cmd->add_option("-o,--output", opt.output, "Output file (default stdout)");

    auto* multiset_cmd = app.add_subcommand("multiset", "Multi-object information distance report");
    multiset_cmd->add_option("inputs", inputs, "Input files or a directory")->required();
    multiset_cmd->add_option("--slack", opt.slack, "Sandwich slack in bytes (default 2*log2(bytes)+64)");
    multiset_cmd->add_option("--format", opt.format, "Report format: text (default) or tsv");
    multiset_cmd->add_option("-o,--output", opt.output, "Output file (default stdout)");
    add_compressor_flags(multiset_cmd, opt);

    auto* check_cmd = app.add_subcommand("check-compressor", "Empirical normality diagnostics");
    check_cmd->add_option("samples", doc_dir, "Directory of sample files")->required();
    check_cmd->add_option("-o,--output", opt.output, "Output file (default stdout)");
    add_compressor_flags(check_cmd, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(ncd_cmd)) return cmd_ncd(inputs, opt);
        if (app.got_subcommand(index_cmd)) return cmd_index(doc_dir, terms_file, opt);
        if (app.got_subcommand(nwd_cmd))
            return cmd_nwd(inputs, index_file, live_url, count_path, timeout, opt);
        if (app.got_subcommand(cluster_cmd)) return cmd_cluster(matrix_file, score_out, opt);
        if (app.got_subcommand(multiset_cmd)) return cmd_multiset(inputs, opt);
        if (app.got_subcommand(check_cmd)) return cmd_check_compressor(doc_dir, opt);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "nid: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nid::ExternalToolError& e) {
        std::cerr << "nid: " << e.what() << "\n";
        return kExitExternal;
    } catch (const nid::ValidationError& e) {
        std::cerr << "nid: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "nid: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
