#include <algorithm>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spiketools/experiment.hpp"
#include "spiketools/generators.hpp"
#include "spiketools/harness.hpp"
#include "spiketools/io.hpp"
#include "spiketools/lif.hpp"
#include "spiketools/metrics.hpp"
#include "spiketools/sod.hpp"
#include "spiketools/wfdb.hpp"

namespace {

using namespace spiketools;

std::string fmt_score(const std::optional<double>& v) {
    if (!v) {
        return "N/A";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", *v);
    return buf;
}

void run_sod(const std::string& input, const std::string& out, double theta, int upsample,
             bool do_normalize) {
    UniformSignal x = read_signal_csv(input);
    if (upsample > 1) {
        x = upsample_cubic(x, upsample);
    }
    if (do_normalize) {
        x = normalize(x);
    }
    const SpikeTrain train = sod_encode(x, {theta});
    write_spike_csv(out, train);
    std::printf("%zu samples -> %zu spikes -> %s\n", x.size(), train.size(), out.c_str());
}

void run_lif(const std::string& input, const std::string& out, const LifConfig& cfg) {
    SpikeTrain encoded;
    std::size_t n_in = 0;
    switch (sniff_csv(input)) {
    case CsvKind::Spikes: {
        const SpikeTrain eta = read_spike_csv(input);
        n_in = eta.size();
        encoded = lif_encode_train(eta, cfg);
        break;
    }
    case CsvKind::Signal: {
        HybridSignal f;
        f.base = read_signal_csv(input);
        n_in = f.base.size();
        encoded = lif_encode(f, cfg);
        break;
    }
    default:
        throw ParseError(input + ": expected a 't,amplitude' or 't,value' CSV header");
    }
    write_spike_csv(out, encoded);
    std::printf("%zu events in -> %zu spikes -> %s\n", n_in, encoded.size(), out.c_str());
}

void run_norm(const std::string& input, const std::string& kind, double alpha) {
    const SpikeTrain train = read_spike_csv(input);
    double value = 0.0;
    if (kind == "alexiewicz") {
        value = alexiewicz_norm(train, alpha);
    } else {
        std::vector<double> amps;
        amps.reserve(train.size());
        for (const Spike& s : train) {
            amps.push_back(s.amplitude);
        }
        value = weyl_discrepancy(amps);
    }
    std::printf("%.12g\n", value);
}

void run_quantize_bench(std::size_t runs, const std::vector<std::size_t>& spikes,
                        const std::vector<double>& amp_scales, const std::vector<double>& alphas,
                        const std::string& reset, std::uint64_t seed, const std::string& out,
                        bool summary) {
    ExperimentGrid grid;
    grid.spike_counts = spikes;
    grid.amp_scales = amp_scales;
    grid.alphas = alphas;
    if (reset != "all") {
        grid.resets = {reset_mode_from_string(reset)};
    }
    const std::vector<ErrorSample> samples = quantization_experiment(grid, runs, seed);

    auto write_samples = [&](std::FILE* f) {
        std::fprintf(f, "reset,alpha,n_spikes,amp_scale,seed,error\n");
        for (const ErrorSample& s : samples) {
            std::fprintf(f, "%s,%.12g,%zu,%.12g,%llu,%.12g\n", to_string(s.reset), s.alpha,
                         s.n_spikes, s.amp_scale, static_cast<unsigned long long>(s.seed), s.error);
        }
    };
    if (!out.empty()) {
        std::FILE* f = std::fopen(out.c_str(), "w");
        if (f == nullptr) {
            throw ParseError("cannot open " + out + " for writing");
        }
        write_samples(f);
        std::fclose(f);
        std::fprintf(stderr, "%zu samples -> %s\n", samples.size(), out.c_str());
    }
    if (summary) {
        std::printf("reset,alpha,n_spikes,amp_scale,min,q1,median,q3,max\n");
        // grid order is preserved inside the sample list: group consecutively
        std::size_t i = 0;
        while (i < samples.size()) {
            std::vector<double> errors;
            const ErrorSample& head = samples[i];
            while (i < samples.size() && samples[i].reset == head.reset &&
                   samples[i].alpha == head.alpha && samples[i].n_spikes == head.n_spikes &&
                   samples[i].amp_scale == head.amp_scale) {
                errors.push_back(samples[i].error);
                ++i;
            }
            const BoxStats st = box_stats(errors);
            std::printf("%s,%.12g,%zu,%.12g,%.6g,%.6g,%.6g,%.6g,%.6g\n", to_string(head.reset),
                        head.alpha, head.n_spikes, head.amp_scale, st.min, st.q1, st.median, st.q3,
                        st.max);
        }
    }
    if (out.empty() && !summary) {
        write_samples(stdout);
    }
}

void run_make_synth(const std::string& out_dir, std::size_t n_records, double bpm,
                    double duration, std::uint64_t seed) {
    for (std::size_t i = 0; i < n_records; ++i) {
        const double rate = std::min(220.0, bpm + 7.0 * static_cast<double>(i));
        const SyntheticEcg ecg = gen_synthetic_ecg(rate, duration);
        char name[32];
        std::snprintf(name, sizeof(name), "synth%02zu", i);

        AnnotatedRecord rec;
        rec.header.record_name = name;
        rec.header.sample_rate = 360.0;
        rec.header.signals = {{std::string(name) + ".dat", 212, 200.0, 1024, 0, "L1"},
                              {std::string(name) + ".dat", 212, 200.0, 1024, 0, "L2"}};
        rec.channels.push_back(ecg.signal);
        UniformSignal second = ecg.signal;
        std::mt19937_64 rng(seed + i);
        std::uniform_real_distribution<double> gain(0.5, 0.9);
        const double g = gain(rng);
        for (double& v : second.samples) {
            v *= g;
        }
        rec.channels.push_back(std::move(second));
        for (double t : ecg.beat_times) {
            rec.beats.push_back({t, 1});
        }
        save_record(out_dir, rec);
        std::printf("%s: %.0f bpm, %zu beats -> %s/%s.{hea,dat,atr}\n", name, rate,
                    rec.beats.size(), out_dir.c_str(), name);
    }
}

void print_evaluation(const std::string& record, const QrsEvaluation& eval, QrsMethod method) {
    std::printf("record %s  method %s\n", record.c_str(), to_string(method));
    std::printf("  events %zu  detections %zu  beats %zu\n", eval.n_events,
                eval.detections.size(), eval.match.p);
    std::printf("  TP %zu  FN %zu  FP %zu\n", eval.match.tp, eval.match.fn, eval.match.fp);
    std::printf("  TPR %s  PPV %s\n", fmt_score(eval.scores.tpr).c_str(),
                fmt_score(eval.scores.ppv).c_str());
}

void run_qrs(const std::string& record_dir, const std::string& record, std::size_t channel,
             const std::string& method_name, double tol, const std::string& out) {
    const QrsMethod method = qrs_method_from_string(method_name);
    const AnnotatedRecord rec = load_record(record_dir, record);
    const QrsEvaluation eval = evaluate_qrs(rec, channel, method, tol);
    if (!out.empty()) {
        write_detection_csv(out, eval.detections);
    }
    print_evaluation(record, eval, method);
}

void run_qrs_all(const std::string& record_dir, const std::string& method_name,
                 std::size_t channel, double tol) {
    const QrsMethod method = qrs_method_from_string(method_name);
    const std::vector<std::string> names = list_records(record_dir);
    if (names.empty()) {
        throw ParseError("no .hea records found in " + record_dir);
    }
    std::printf("record,beats,tp,fn,fp,tpr,ppv,events\n");
    MatchResult total;
    std::size_t total_events = 0;
    for (const std::string& name : names) {
        const AnnotatedRecord rec = load_record(record_dir, name);
        const QrsEvaluation eval = evaluate_qrs(rec, channel, method, tol);
        std::printf("%s,%zu,%zu,%zu,%zu,%s,%s,%zu\n", name.c_str(), eval.match.p, eval.match.tp,
                    eval.match.fn, eval.match.fp, fmt_score(eval.scores.tpr).c_str(),
                    fmt_score(eval.scores.ppv).c_str(), eval.n_events);
        total.tp += eval.match.tp;
        total.fn += eval.match.fn;
        total.fp += eval.match.fp;
        total.p += eval.match.p;
        total.pp += eval.match.pp;
        total_events += eval.n_events;
    }
    const DetectionScores scores = tpr_ppv(total);
    std::printf("TOTAL,%zu,%zu,%zu,%zu,%s,%s,%zu\n", total.p, total.tp, total.fn, total.fp,
                fmt_score(scores.tpr).c_str(), fmt_score(scores.ppv).c_str(),
                total_events / names.size());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Event-based signal encoding, spike-train metrics and QRS detection"};
    app.require_subcommand(1);

    // sod
    auto* sod = app.add_subcommand("sod", "Send-on-delta encode a signal CSV");
    std::string sod_input, sod_out = "spikes.csv";
    double sod_theta = 0.05;
    int sod_upsample = 1;
    bool sod_normalize = false;
    sod->add_option("--input", sod_input, "signal CSV (t,value)")->required();
    sod->add_option("--theta", sod_theta, "SOD threshold")->check(CLI::PositiveNumber);
    sod->add_option("--upsample", sod_upsample, "cubic-spline upsampling factor")
        ->check(CLI::PositiveNumber);
    sod->add_flag("--normalize", sod_normalize, "scale amplitudes to [-1, 1] first");
    sod->add_option("--out", sod_out, "output spike CSV");

    // lif
    auto* lif = app.add_subcommand("lif", "LIF-encode a spike or signal CSV");
    std::string lif_input, lif_out = "lif_spikes.csv", lif_reset = "mod";
    double lif_theta = 1.0, lif_alpha = 0.0, lif_tr = 0.0;
    lif->add_option("--input", lif_input, "spike CSV (t,amplitude) or signal CSV (t,value)")
        ->required();
    lif->add_option("--theta", lif_theta, "firing threshold")->check(CLI::PositiveNumber);
    lif->add_option("--alpha", lif_alpha, "leak rate (1/s)")->check(CLI::NonNegativeNumber);
    lif->add_option("--tr", lif_tr, "refractory time (s)")->check(CLI::NonNegativeNumber);
    lif->add_option("--reset", lif_reset, "reset mode")
        ->check(CLI::IsMember({"zero", "subtract", "mod"}));
    lif->add_option("--out", lif_out, "output spike CSV");

    // norm
    auto* norm = app.add_subcommand("norm", "Print a spike-train norm");
    std::string norm_input, norm_kind = "alexiewicz";
    double norm_alpha = 0.0;
    norm->add_option("--input", norm_input, "spike CSV")->required();
    norm->add_option("--kind", norm_kind, "norm kind")
        ->check(CLI::IsMember({"alexiewicz", "discrepancy"}));
    norm->add_option("--alpha", norm_alpha, "leak rate (1/s)")->check(CLI::NonNegativeNumber);

    // quantize-bench
    auto* bench = app.add_subcommand("quantize-bench", "LIF quantization-error experiments");
    std::size_t bench_runs = 100;
    std::vector<std::size_t> bench_spikes{10, 100, 1000};
    std::vector<double> bench_scales{1.0, 1.5};
    std::vector<double> bench_alphas{1.0, 0.1};
    std::string bench_reset = "all", bench_out;
    std::uint64_t bench_seed = 1;
    bool bench_summary = false;
    bench->add_option("--runs", bench_runs, "runs per grid cell")->check(CLI::PositiveNumber);
    bench->add_option("--spikes", bench_spikes, "spike counts")->delimiter(',');
    bench->add_option("--amp-scale", bench_scales, "amplitude ranges as multiples of theta")
        ->delimiter(',');
    bench->add_option("--alpha", bench_alphas, "leak rates")->delimiter(',');
    bench->add_option("--reset", bench_reset, "reset mode or 'all'")
        ->check(CLI::IsMember({"all", "zero", "subtract", "mod"}));
    bench->add_option("--seed", bench_seed, "root RNG seed");
    bench->add_option("--out", bench_out, "sample CSV output path");
    bench->add_flag("--summary", bench_summary, "print per-cell box stats");

    // make-synth
    auto* synth = app.add_subcommand("make-synth",
                                     "Write synthetic two-channel WFDB records with annotations");
    std::string synth_dir = "data/synth";
    std::size_t synth_records = 2;
    double synth_bpm = 72.0, synth_duration = 60.0;
    std::uint64_t synth_seed = 1;
    synth->add_option("--out-dir", synth_dir, "output directory");
    synth->add_option("--records", synth_records, "number of records")->check(CLI::PositiveNumber);
    synth->add_option("--bpm", synth_bpm, "heart rate of the first record")
        ->check(CLI::Range(30.0, 220.0));
    synth->add_option("--duration", synth_duration, "record length (s)")
        ->check(CLI::PositiveNumber);
    synth->add_option("--seed", synth_seed, "RNG seed");

    // qrs
    auto* qrs = app.add_subcommand("qrs", "Detect QRS complexes in one WFDB record");
    std::string qrs_dir, qrs_record, qrs_method = "discrepancy", qrs_out;
    std::size_t qrs_channel = 0;
    double qrs_tol = 0.150;
    qrs->add_option("--record-dir", qrs_dir, "directory with .hea/.dat/.atr files")->required();
    qrs->add_option("--record", qrs_record, "record name, e.g. 100")->required();
    qrs->add_option("--channel", qrs_channel, "channel index")->check(CLI::Range(0, 1));
    qrs->add_option("--method", qrs_method, "detector")
        ->check(CLI::IsMember({"pantompkins", "discrepancy"}));
    qrs->add_option("--tol", qrs_tol, "matching tolerance (s)")->check(CLI::PositiveNumber);
    qrs->add_option("--out", qrs_out, "detection CSV output path");

    // qrs-all
    auto* qrs_all = app.add_subcommand("qrs-all", "Score a detector over every record in a directory");
    std::string all_dir, all_method = "discrepancy";
    std::size_t all_channel = 0;
    double all_tol = 0.150;
    qrs_all->add_option("--record-dir", all_dir, "directory with .hea/.dat/.atr files")->required();
    qrs_all->add_option("--method", all_method, "detector")
        ->check(CLI::IsMember({"pantompkins", "discrepancy"}));
    qrs_all->add_option("--channel", all_channel, "channel index")->check(CLI::Range(0, 1));
    qrs_all->add_option("--tol", all_tol, "matching tolerance (s)")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sod->parsed()) {
            run_sod(sod_input, sod_out, sod_theta, sod_upsample, sod_normalize);
        } else if (lif->parsed()) {
            run_lif(lif_input, lif_out,
                    {lif_theta, lif_alpha, lif_tr, reset_mode_from_string(lif_reset)});
        } else if (norm->parsed()) {
            run_norm(norm_input, norm_kind, norm_alpha);
        } else if (bench->parsed()) {
            run_quantize_bench(bench_runs, bench_spikes, bench_scales, bench_alphas, bench_reset,
                               bench_seed, bench_out, bench_summary);
        } else if (synth->parsed()) {
            run_make_synth(synth_dir, synth_records, synth_bpm, synth_duration, synth_seed);
        } else if (qrs->parsed()) {
            run_qrs(qrs_dir, qrs_record, qrs_channel, qrs_method, qrs_tol, qrs_out);
        } else if (qrs_all->parsed()) {
            run_qrs_all(all_dir, all_method, all_channel, all_tol);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
