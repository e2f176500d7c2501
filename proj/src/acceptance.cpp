#include "wsnsim/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "wsnsim/analytic.hpp"
#include "wsnsim/engine.hpp"
#include "wsnsim/fusion.hpp"
#include "wsnsim/metrics.hpp"
#include "wsnsim/phy.hpp"
#include "wsnsim/rng.hpp"
#include "wsnsim/sweep.hpp"

namespace wsnsim {

bool AcceptanceReport::all_pass() const
{
    for (const auto& c : criteria)
        if (!c.pass)
            return false;
    return !criteria.empty();
}

namespace {

std::string num(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Collects sub-check outcomes and detail lines for one criterion.
class Criterion {
public:
    explicit Criterion(std::string name) : name_(std::move(name)) {}

    void require(bool ok, const std::string& what)
    {
        pass_ = pass_ && ok;
        detail_ += std::string("    ") + (ok ? "ok   " : "FAIL ") + what + "\n";
    }

    void note(const std::string& what)
    {
        detail_ += "    note " + what + "\n";
    }

    CriterionResult finish(double elapsed_s) const
    {
        return {name_, pass_, detail_, elapsed_s};
    }

private:
    std::string name_;
    bool pass_ = true;
    std::string detail_;
};

struct Ctx {
    int workers = 1;
    bool quick = false;

    std::uint64_t n(std::uint64_t full) const
    {
        if (!quick)
            return full;
        const std::uint64_t cut = full / 100;
        return cut < 10000 ? 10000 : cut;
    }
};

BerPoint sim(const Ctx& ctx, int order, int sensors, double snr_db, double pc,
             Combiner comb, Fidelity fid, FadingKind fading,
             std::uint64_t trials, std::uint64_t seed)
{
    SimParams p;
    p.order = order;
    p.sensor_count = sensors;
    p.snr_db = snr_db;
    p.p_correct = pc;
    p.combiner = comb;
    p.fidelity = fid;
    p.fading = fading;
    p.trials = trials;
    p.seed = seed;
    return run_point(p, ctx.workers);
}

// 1. Simulated SER against the AWGN closed form, fading bypassed.
CriterionResult c1_awgn(const Ctx& ctx)
{
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c("awgn-closed-form");
    const std::uint64_t trials = ctx.n(1000000);
    std::uint64_t seed = 101;
    for (int m : {2, 4, 16}) {
        for (double snr : {0.0, 5.0, 10.0}) {
            const double gamma = std::pow(10.0, snr / 10.0);
            const double expect = awgn_mfsk_sep(m, gamma);
            const BerPoint bp =
                sim(ctx, m, 1, snr, 1.0, Combiner::Sc, Fidelity::Symbol,
                    FadingKind::None, trials, seed++);
            const double sigma = std::sqrt(expect * (1.0 - expect)
                                           / static_cast<double>(trials));
            const double z = (bp.ser - expect) / sigma;
            c.require(std::fabs(z) <= 3.0,
                      "M=" + std::to_string(m) + " snr=" + num(snr)
                          + " dB: ser=" + num(bp.ser) + " closed-form="
                          + num(expect) + " z=" + num(z));
        }
    }
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - t0;
    return c.finish(dt.count());
}

// 2. Binary FSK over Rayleigh against 1/(2+snr).
CriterionResult c2_rayleigh(const Ctx& ctx)
{
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c("rayleigh-closed-form");
    const std::uint64_t trials = ctx.n(10000000);
    std::uint64_t seed = 211;
    for (double snr : {0.0, 5.0, 10.0, 20.0}) {
        const double gbar = std::pow(10.0, snr / 10.0);
        const double expect = rayleigh_ncbfsk_ber(gbar);
        const BerPoint bp = sim(ctx, 2, 1, snr, 1.0, Combiner::Sc,
                                Fidelity::Symbol, FadingKind::Rayleigh,
                                trials, seed++);
        const double sigma = std::sqrt(expect * (1.0 - expect)
                                       / static_cast<double>(trials));
        const double z = (bp.ber - expect) / sigma;
        c.require(std::fabs(z) <= 3.0,
                  "snr=" + num(snr) + " dB: ber=" + num(bp.ber)
                      + " closed-form=" + num(expect) + " z=" + num(z));
    }
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - t0;
    return c.finish(dt.count());
}

// 3. High-SNR BER plateau against the imperfect-detection floor.
CriterionResult c3_floor(const Ctx& ctx)
{
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c("error-floor");
    const std::uint64_t trials = ctx.n(10000000);
    std::uint64_t seed = 307;
    for (double pc : {0.9995, 0.999}) {
        const double floor = high_snr_ber_floor(pc, 16);
        const BerPoint bp = sim(ctx, 16, 8, 30.0, pc, Combiner::Sc,
                                Fidelity::Symbol, FadingKind::Rayleigh,
                                trials, seed++);
        const double rel = std::fabs(bp.ber - floor) / floor;
        c.require(rel <= 0.15,
                  "pc=" + num(pc) + " @30 dB: ber=" + num(bp.ber) + " floor="
                      + num(floor) + " rel-dev=" + num(rel));
    }
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - t0;
    return c.finish(dt.count());
}

// 4. BER falls as the alphabet grows at fixed per-bit SNR. The 5 dB axis is
// applied per bit (symbol energy scales with log2 M); at fixed symbol energy
// the trend provably inverts, and the per-bit reading reproduces both
// reference endpoints, so that is the reading under test.
CriterionResult c4_m_scaling(const Ctx& ctx)
{
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c("m-scaling");
    const std::uint64_t trials = ctx.n(200000);
    std::uint64_t seed = 401;

    struct Point {
        int order;
        BerPoint stats;
    };
    std::vector<Point> pts;
    for (int m : {2, 4, 8, 16, 32, 64, 128, 256}) {
        const double bits = std::log2(static_cast<double>(m));
        const double snr_db = 5.0 + 10.0 * std::log10(bits);
        pts.push_back({m, sim(ctx, m, 4, snr_db, 1.0, Combiner::Sc,
                              Fidelity::Symbol, FadingKind::Rayleigh, trials,
                              seed++)});
    }

    bool monotone = true;
    for (std::size_t i = 1; i < pts.size(); ++i)
        monotone = monotone && pts[i].stats.ber < pts[i - 1].stats.ber;
    std::string curve;
    for (const auto& p : pts)
        curve += num(p.stats.ber) + " ";
    c.require(monotone, "ber strictly decreasing in M: " + curve);

    const BerPoint& first = pts.front().stats;
    const BerPoint& last = pts.back().stats;
    c.require(last.ci_high < first.ci_low,
              "M=2 and M=256 intervals separated: [" + num(last.ci_low) + ","
                  + num(last.ci_high) + "] vs [" + num(first.ci_low) + ","
                  + num(first.ci_high) + "]");

    const double ref_first = 0.2414;
    const double ref_last = 0.09148;
    const double dev_first = (first.ber - ref_first) / ref_first;
    const double dev_last = (last.ber - ref_last) / ref_last;
    const bool flag =
        std::fabs(dev_first) > 0.25 || std::fabs(dev_last) > 0.25;
    c.note("endpoint deviation vs reference: M=2 " + num(100.0 * dev_first)
           + "%, M=256 " + num(100.0 * dev_last) + "%"
           + (flag ? "  [FLAG: outside 25%, reference normalization "
                     "underspecified]"
                   : ""));
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - t0;
    return c.finish(dt.count());
}

// 5. BER rises strictly as local detection degrades.
CriterionResult c5_pc_ordering(const Ctx& ctx)
{
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c("pc-ordering");
    const std::uint64_t trials = ctx.n(4000000);
    std::uint64_t seed = 503;
    std::vector<double> pcs = {1.0, 0.9995, 0.999, 0.99};
    std::vector<BerPoint> pts;
    for (double pc : pcs)
        pts.push_back(sim(ctx, 16, 8, 16.0, pc, Combiner::Sc, Fidelity::Symbol,
                          FadingKind::Rayleigh, trials, seed++));
    for (std::size_t i = 1; i < pts.size(); ++i)
        c.require(pts[i].ber > pts[i - 1].ber,
                  "pc=" + num(pcs[i]) + " ber=" + num(pts[i].ber)
                      + " > pc=" + num(pcs[i - 1]) + " ber="
                      + num(pts[i - 1].ber));
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - t0;
    return c.finish(dt.count());
}

// 6. Square-law EGC beats SC with separated intervals.
CriterionResult c6_combiners(const Ctx& ctx)
{
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c("combiner-ordering");
    const std::uint64_t trials = ctx.n(1000000);
    std::uint64_t seed = 601;
    for (double snr : {10.0, 15.0}) {
        const BerPoint sc = sim(ctx, 8, 4, snr, 1.0, Combiner::Sc,
                                Fidelity::Symbol, FadingKind::Rayleigh, trials,
                                seed++);
        const BerPoint egc = sim(ctx, 8, 4, snr, 1.0, Combiner::Egc,
                                 Fidelity::Symbol, FadingKind::Rayleigh,
                                 trials, seed++);
        const auto sc_ci = wilson_ci(sc.symbol_errors, sc.trials, 0.95);
        const auto egc_ci = wilson_ci(egc.symbol_errors, egc.trials, 0.95);
        const bool ordered = egc.ser <= sc.ser;
        const bool separated = egc_ci.high <= sc_ci.low;
        c.require(ordered && separated,
                  "snr=" + num(snr) + " dB: ser egc=" + num(egc.ser) + " ["
                      + num(egc_ci.low) + "," + num(egc_ci.high) + "] vs sc="
                      + num(sc.ser) + " [" + num(sc_ci.low) + ","
                      + num(sc_ci.high) + "]");
    }
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - t0;
    return c.finish(dt.count());
}

// 7. Waveform-level and symbol-level paths agree statistically.
CriterionResult c7_fidelity(const Ctx& ctx)
{
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c("fidelity-equivalence");
    const std::uint64_t trials = ctx.n(100000);
    const BerPoint sym = sim(ctx, 4, 2, 10.0, 1.0, Combiner::Sc,
                             Fidelity::Symbol, FadingKind::Rayleigh, trials,
                             701);
    const BerPoint wav = sim(ctx, 4, 2, 10.0, 1.0, Combiner::Sc,
                             Fidelity::Waveform, FadingKind::Rayleigh, trials,
                             702);
    const auto ci_s = wilson_ci(sym.symbol_errors, sym.trials, 0.95);
    const auto ci_w = wilson_ci(wav.symbol_errors, wav.trials, 0.95);
    const bool overlap = ci_s.low <= ci_w.high && ci_w.low <= ci_s.high;
    c.require(overlap, "ser symbol=" + num(sym.ser) + " [" + num(ci_s.low)
                           + "," + num(ci_s.high) + "] vs waveform="
                           + num(wav.ser) + " [" + num(ci_w.low) + ","
                           + num(ci_w.high) + "]");
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - t0;
    return c.finish(dt.count());
}

// 8. Exact structural properties, no statistical tolerance.
CriterionResult c8_properties(const Ctx&)
{
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c("exact-properties");
    SplitRng rng(808, 0);

    // selection combining == global argmax over all cells, and the additive
    // offset never changes the decision
    {
        bool argmax_ok = true;
        bool offset_ok = true;
        for (int it = 0; it < 10000 && (argmax_ok && offset_ok); ++it) {
            const int tones = 2 + static_cast<int>(rng.uniform_below(15));
            const int sensors = 1 + static_cast<int>(rng.uniform_below(8));
            EnergyMatrix e(tones, sensors);
            for (int m = 0; m < tones; ++m)
                for (int l = 0; l < sensors; ++l)
                    e.at(m, l) = rng.uniform();

            int best_m = 0, best_l = 0;
            double best = e.at(0, 0);
            for (int m = 0; m < tones; ++m)
                for (int l = 0; l < sensors; ++l)
                    if (e.at(m, l) > best) {
                        best = e.at(m, l);
                        best_m = m;
                        best_l = l;
                    }
            const FusionDecision d0 = sc_decide(e, 0.0);
            argmax_ok = argmax_ok && d0.symbol == best_m + 1
                     && d0.winning_sensor && *d0.winning_sensor == best_l + 1;

            const FusionDecision d1 = sc_decide(e, 12.75);
            offset_ok = offset_ok && d1.symbol == d0.symbol
                     && d1.winning_sensor == d0.winning_sensor;
        }
        c.require(argmax_ok, "sc equals global argmax on 10^4 random grids");
        c.require(offset_ok, "sc decision invariant to the additive offset");
    }

    // power-of-two scaling is exact in binary floating point, so decisions
    // must be bit-identical after scaling every cell
    {
        bool ok = true;
        for (int it = 0; it < 2000 && ok; ++it) {
            EnergyMatrix e(8, 4);
            for (int m = 0; m < 8; ++m)
                for (int l = 0; l < 4; ++l)
                    e.at(m, l) = rng.uniform();
            const FusionDecision sc0 = sc_decide(e, 0.0);
            const FusionDecision eg0 = egc_decide(e);
            for (double scale : {0.00390625, 1024.0}) {
                EnergyMatrix s(8, 4);
                for (int m = 0; m < 8; ++m)
                    for (int l = 0; l < 4; ++l)
                        s.at(m, l) = e.at(m, l) * scale;
                const FusionDecision sc1 = sc_decide(s, 0.0);
                const FusionDecision eg1 = egc_decide(s);
                ok = ok && sc1.symbol == sc0.symbol
                  && sc1.winning_sensor == sc0.winning_sensor
                  && eg1.symbol == eg0.symbol;
            }
        }
        c.require(ok, "sc/egc decisions invariant to power-of-two scaling");
    }

    // deterministic lowest-index tie-breaks
    {
        EnergyMatrix e(6, 3);
        for (int m = 0; m < 6; ++m)
            for (int l = 0; l < 3; ++l)
                e.at(m, l) = 0.125 * (m * 3 + l);
        e.at(1, 2) = 100.0;
        e.at(4, 0) = 100.0; // exact duplicate of the maximum
        const FusionDecision d = sc_decide(e, 0.0);
        c.require(d.symbol == 2 && d.winning_sensor && *d.winning_sensor == 3,
                  "sc tie-break picks the lowest tone then lowest sensor");

        EnergyMatrix g(4, 2);
        for (int m = 0; m < 4; ++m)
            for (int l = 0; l < 2; ++l)
                g.at(m, l) = 1.0;
        g.at(2, 0) = 3.0;
        g.at(2, 1) = 5.0;
        g.at(0, 0) = 5.0;
        g.at(0, 1) = 3.0; // rows 0 and 2 both sum to 8
        const FusionDecision ge = egc_decide(g);
        c.require(ge.symbol == 1, "egc tie-break picks the lowest tone");
    }

    // slot tones stay orthogonal through the demodulator
    {
        const WaveformParams wp = WaveformParams::make(8, 1, 2.5, 1.0, 64);
        double worst = 0.0;
        std::vector<std::complex<double>> slot;
        EnergyMatrix e;
        for (int m = 1; m <= 8; ++m) {
            synthesize_slot(m, 1, 0.37 * m, wp, slot);
            demodulate(slot, wp, e);
            for (int k = 0; k < 8; ++k)
                if (k + 1 != m)
                    worst = std::max(worst,
                                     e.at(k, 0) / wp.per_sensor_energy);
        }
        c.require(worst <= 1e-6,
                  "cross-tone leakage " + num(worst) + " <= 1e-6 relative");
    }

    // tally merging is associative and commutative in exact integers
    {
        bool ok = true;
        for (int it = 0; it < 1000 && ok; ++it) {
            auto mk = [&rng] {
                ErrorTally t;
                t.bits_per_symbol = 4;
                t.trials = rng.uniform_below(1000000);
                t.symbol_errors = rng.uniform_below(t.trials + 1);
                t.bit_errors = t.symbol_errors * rng.uniform_below(5);
                return t;
            };
            const ErrorTally a = mk(), b = mk(), d = mk();
            const ErrorTally left = merge_tallies(merge_tallies(a, b), d);
            const ErrorTally right = merge_tallies(a, merge_tallies(b, d));
            const ErrorTally ab = merge_tallies(a, b);
            const ErrorTally ba = merge_tallies(b, a);
            auto eq = [](const ErrorTally& x, const ErrorTally& y) {
                return x.trials == y.trials
                    && x.symbol_errors == y.symbol_errors
                    && x.bit_errors == y.bit_errors;
            };
            ok = eq(left, right) && eq(ab, ba);
        }
        c.require(ok, "tally merge associative and commutative");
    }

    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - t0;
    return c.finish(dt.count());
}

// 9. Byte-identical CSV output for worker counts 1, 4, 8.
CriterionResult c9_determinism(const Ctx& ctx)
{
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c("worker-determinism");

    SweepSpec spec;
    spec.base.order = 4;
    spec.base.sensor_count = 2;
    spec.base.p_correct = 0.99;
    spec.base.trials = ctx.n(40000);
    spec.base.seed = 909;
    spec.base.chunk_size = 5000;
    spec.axes.push_back({"snr_db", {0.0, 5.0}});
    spec.axes.push_back({"L", {1.0, 2.0}});

    std::vector<std::string> outputs;
    for (int workers : {1, 4, 8}) {
        spec.workers = workers;
        std::ostringstream os;
        emit_results(run_sweep(spec), OutputFormat::Csv, os);
        outputs.push_back(os.str());
    }
    c.require(outputs[0] == outputs[1] && outputs[1] == outputs[2],
              "CSV bytes identical across workers {1,4,8} ("
                  + std::to_string(outputs[0].size()) + " bytes)");
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - t0;
    return c.finish(dt.count());
}

} // namespace

AcceptanceReport run_acceptance(std::ostream& log,
                                const AcceptanceOptions& options)
{
    Ctx ctx;
    ctx.workers = options.workers < 1 ? 1 : options.workers;
    ctx.quick = options.quick;

    if (ctx.quick)
        log << "QUICK MODE: reduced trial counts, results not authoritative\n";

    AcceptanceReport report;
    const std::vector<CriterionResult (*)(const Ctx&)> order = {
        c1_awgn,     c2_rayleigh,    c3_floor,      c4_m_scaling,
        c5_pc_ordering, c6_combiners, c7_fidelity,  c8_properties,
        c9_determinism,
    };
    int index = 0;
    for (const auto& fn : order) {
        const CriterionResult r = fn(ctx);
        ++index;
        log << (r.pass ? "[PASS]" : "[FAIL]") << " " << index << "/"
            << order.size() << " " << r.name << " (" << num(r.elapsed_s)
            << " s)\n"
            << r.detail;
        log.flush();
        report.criteria.push_back(r);
    }
    log << (report.all_pass() ? "ALL CRITERIA PASSED"
                              : "SOME CRITERIA FAILED")
        << "\n";
    return report;
}

} // namespace wsnsim
