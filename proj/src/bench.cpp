#include "horacirc/bench.hpp"

#include <fftw3.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>

#include "horacirc/closed_form.hpp"
#include "horacirc/decomposition.hpp"
#include "horacirc/errors.hpp"

namespace horacirc::bench {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point since) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - since).count());
}

struct Timing {
    std::uint64_t median_ns = 0;
    std::uint64_t min_ns = 0;
    std::size_t samples = 0;
    bool timed_out = false;
};

// Runs `once` for the warm-up (already done by the caller), then `repeat`
// timed samples, stopping early when the cell exceeds its budget.
Timing time_samples(const std::function<void()>& once, unsigned repeat, double timeout_secs,
                    std::uint64_t warmup_ns) {
    const auto budget = static_cast<std::uint64_t>(timeout_secs * 1e9);
    Timing t;
    std::uint64_t spent = warmup_ns;
    std::vector<std::uint64_t> samples;
    if (spent > budget) t.timed_out = true;
    for (unsigned r = 0; r < repeat && !t.timed_out; ++r) {
        const auto start = Clock::now();
        once();
        samples.push_back(elapsed_ns(start));
        spent += samples.back();
        if (spent > budget && r + 1 < repeat) t.timed_out = true;
    }
    if (samples.empty()) {
        t.median_ns = t.min_ns = warmup_ns;
        return t;
    }
    std::sort(samples.begin(), samples.end());
    const std::size_t m = samples.size();
    t.median_ns = m % 2 == 1 ? samples[m / 2] : (samples[m / 2 - 1] + samples[m / 2]) / 2;
    t.min_ns = samples.front();
    t.samples = m;
    return t;
}

std::string float_digest(const LogDet& d) {
    if (d.sign == 0) return "~0";
    const double log10 = d.log_abs / std::numbers::ln10;
    const double exponent = std::floor(log10);
    const double mantissa = std::pow(10.0, log10 - exponent);
    char buf[64];
    std::snprintf(buf, sizeof buf, "~%s%.9fe%+.0f", d.sign < 0 ? "-" : "", mantissa, exponent);
    return buf;
}

std::string exact_digest(const std::string& canonical) { return "fnv1a:" + fnv1a_hex(canonical); }

EntryBits entry_bits(const Circulant& c) {
    EntryBits e;
    e.n = c.n();
    double total = 0.0;
    for (const auto& x : c.first_row()) {
        e.max = std::max(e.max, x.bit_size());
        total += static_cast<double>(x.bit_size());
    }
    e.mean = total / static_cast<double>(c.n());
    return e;
}

bool log_det_agrees(const LogDet& approx, const Rational& exact, const Circulant& c) {
    if (exact.is_zero()) {
        // |lambda_j| <= sum |c_k|, so n ln(sum |c_k|) bounds ln|det| from above.
        Rational l1;
        for (const auto& x : c.first_row()) l1 += x.abs();
        const double scale = static_cast<double>(c.n()) * l1.log_abs();
        return approx.sign == 0 || approx.log_abs - scale < std::log(kFloatRelTol);
    }
    const LogDet e = exact_log_det(exact);
    return approx.sign == e.sign && std::fabs(approx.log_abs - e.log_abs) <= kFloatRelTol;
}

BenchRow make_row(const std::string& method, std::size_t n, std::size_t bits) {
    BenchRow row;
    row.method = method;
    row.n = n;
    row.entry_bits_max = bits;
    return row;
}

std::vector<std::string> methods_or(const BenchOptions& o, std::vector<std::string> defaults) {
    return o.methods.empty() ? defaults : o.methods;
}

void add_ratio(BenchReport& report, std::size_t n, const std::string& slow, const std::string& fast) {
    const BenchRow* s = report.find(slow, n);
    const BenchRow* f = report.find(fast, n);
    if (s == nullptr || f == nullptr || f->median_ns == 0) return;
    report.ratios.push_back({n, slow, fast, static_cast<double>(s->median_ns) / static_cast<double>(f->median_ns)});
}

}  // namespace

const BenchRow* BenchReport::find(const std::string& method, std::size_t n) const {
    for (const auto& r : rows)
        if (r.method == method && r.n == n) return &r;
    return nullptr;
}

double timeout_from_env(double fallback) {
    if (const char* v = std::getenv("HORACIRC_TIMEOUT_SECS")) {
        char* end = nullptr;
        const double secs = std::strtod(v, &end);
        if (end != v && secs > 0.0) return secs;
    }
    return fallback;
}

std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

LogDet fft_log_det(const Circulant& c) {
    const auto n = static_cast<int>(c.n());
    fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        buf[k][0] = c.first_row()[static_cast<std::size_t>(k)].to_double();
        buf[k][1] = 0.0;
    }
    // FFTW_BACKWARD uses exp(+2 pi i jk / n), matching lambda_j.
    fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    LogDet out{1, 0.0};
    double phase = 0.0;
    for (int j = 0; j < n; ++j) {
        const double mag = std::hypot(buf[j][0], buf[j][1]);
        if (mag == 0.0) {
            out = {0, -INFINITY};
            break;
        }
        out.log_abs += std::log(mag);
        phase += std::atan2(buf[j][1], buf[j][0]);
    }
    if (out.sign != 0) out.sign = std::cos(phase) >= 0.0 ? 1 : -1;
    fftw_destroy_plan(plan);
    fftw_free(buf);
    return out;
}

BenchReport bench_det(const HoradamParams& params, const std::vector<std::size_t>& sizes, unsigned repeat,
                      const BenchOptions& options) {
    if (repeat == 0) throw InvalidArgument("repeat must be >= 1");
    BenchReport report;
    report.kind = "det";
    report.params = params;
    const auto methods = methods_or(options, {"closed", "bareiss", "dft"});

    for (std::size_t n : sizes) {
        if (n < 3) throw InvalidArgument("bench sizes must be >= 3");
        const Circulant c = from_params(params, n);
        const EntryBits bits = entry_bits(c);
        report.entry_bits.push_back(bits);

        // The exact reference comes from the Bareiss cell's warm-up run; it is
        // computed first whatever the method order.
        std::optional<Rational> reference;
        std::optional<BenchRow> bareiss_row;
        auto run_bareiss = [&] {
            BenchRow row = make_row("bareiss", n, bits.max);
            const auto start = Clock::now();
            Rational det = bareiss_det(materialize(c));
            const auto warm = elapsed_ns(start);
            row.value_digest = exact_digest(det.to_string());
            row.validated = true;
            const Timing t = time_samples([&] { (void)bareiss_det(materialize(c)); }, repeat, options.timeout_secs, warm);
            row.median_ns = t.median_ns;
            row.min_ns = t.min_ns;
            row.samples = t.samples;
            row.timed_out = t.timed_out;
            reference = std::move(det);
            bareiss_row = row;
        };
        run_bareiss();

        for (const auto& method : methods) {
            if (method == "bareiss") {
                report.rows.push_back(*bareiss_row);
                continue;
            }
            BenchRow row = make_row(method, n, bits.max);
            std::function<void()> once;
            const auto start = Clock::now();
            try {
                if (method == "closed") {
                    const Rational det = det_eq3(params, n);
                    row.value_digest = exact_digest(det.to_string());
                    row.validated = det == *reference;
                    once = [&] { (void)det_eq3(params, n); };
                } else if (method == "dft") {
                    const LogDet d = dft_log_det(c);
                    row.value_digest = float_digest(d);
                    row.validated = log_det_agrees(d, *reference, c);
                    once = [&] { (void)dft_log_det(c); };
                } else if (method == "fft") {
                    const LogDet d = fft_log_det(c);
                    row.value_digest = float_digest(d);
                    row.validated = log_det_agrees(d, *reference, c);
                    once = [&] { (void)fft_log_det(c); };
                } else {
                    throw InvalidArgument("unknown det method '" + method + "'");
                }
            } catch (const InvalidArgument&) {
                throw;
            } catch (const Error& e) {
                row.note = e.what();
                report.rows.push_back(row);
                continue;
            }
            if (!row.validated) row.note = "value diverges from the Bareiss determinant";
            const auto warm = elapsed_ns(start);
            const Timing t = time_samples(once, repeat, options.timeout_secs, warm);
            row.median_ns = t.median_ns;
            row.min_ns = t.min_ns;
            row.samples = t.samples;
            row.timed_out = t.timed_out;
            report.rows.push_back(row);
        }
        add_ratio(report, n, "bareiss", "closed");
        add_ratio(report, n, "bareiss", "fft");
        add_ratio(report, n, "dft", "fft");
    }
    return report;
}

BenchReport bench_inverse(const HoradamParams& params, const std::vector<std::size_t>& sizes, unsigned repeat,
                          const BenchOptions& options) {
    if (repeat == 0) throw InvalidArgument("repeat must be >= 1");
    BenchReport report;
    report.kind = "inverse";
    report.params = params;
    const auto methods = methods_or(options, {"gauss", "structured", "dft"});

    for (std::size_t n : sizes) {
        if (n < 3) throw InvalidArgument("bench sizes must be >= 3");
        const Circulant c = from_params(params, n);
        const EntryBits bits = entry_bits(c);
        report.entry_bits.push_back(bits);

        std::optional<std::vector<Rational>> reference;
        std::string reference_error;
        std::uint64_t gauss_warm = 0;
        {
            const auto start = Clock::now();
            try {
                reference = gauss_inverse(materialize(c)).row(0);
            } catch (const Error& e) {
                reference_error = e.what();
            }
            gauss_warm = elapsed_ns(start);
        }

        for (const auto& method : methods) {
            BenchRow row = make_row(method, n, bits.max);
            std::function<void()> once;
            std::uint64_t warm = 0;
            try {
                if (method == "gauss") {
                    if (!reference) throw SingularMatrix(reference_error);
                    std::string joined;
                    for (const auto& x : *reference) joined += x.to_string() + " ";
                    row.value_digest = exact_digest(joined);
                    row.validated = true;
                    warm = gauss_warm;
                    once = [&] { (void)gauss_inverse(materialize(c)); };
                } else if (method == "structured") {
                    const auto start = Clock::now();
                    const StructuredInverse si = structured_inverse(params, n);
                    warm = elapsed_ns(start);
                    const std::vector<Rational> first = si.P.row(0);
                    std::string joined;
                    for (const auto& x : first) joined += x.to_string() + " ";
                    row.value_digest = exact_digest(joined);
                    row.validated = si.valid && reference && first == *reference;
                    row.note = si.valid ? std::string("structured valid=true") : std::string("structured valid=false");
                    once = [&] { (void)structured_inverse(params, n); };
                } else if (method == "dft") {
                    const auto start = Clock::now();
                    const std::vector<double> a = dft_inverse(c);
                    warm = elapsed_ns(start);
                    std::string joined;
                    char buf[40];
                    for (double x : a) {
                        std::snprintf(buf, sizeof buf, "%.6e ", x);
                        joined += buf;
                    }
                    row.value_digest = "~fnv1a:" + fnv1a_hex(joined);
                    if (reference) {
                        double scale = 0.0;
                        double worst = 0.0;
                        for (std::size_t k = 0; k < a.size(); ++k) {
                            const double e = (*reference)[k].to_double();
                            scale = std::max(scale, std::fabs(e));
                            worst = std::max(worst, std::fabs(a[k] - e));
                        }
                        row.validated = worst <= kFloatRelTol * scale;
                    }
                    once = [&] { (void)dft_inverse(c); };
                } else {
                    throw InvalidArgument("unknown inverse method '" + method + "'");
                }
            } catch (const InvalidArgument&) {
                throw;
            } catch (const Error& e) {
                row.note = e.what();
                report.rows.push_back(row);
                continue;
            }
            const Timing t = time_samples(once, repeat, options.timeout_secs, warm);
            row.median_ns = t.median_ns;
            row.min_ns = t.min_ns;
            row.samples = t.samples;
            row.timed_out = t.timed_out;
            report.rows.push_back(row);
        }
        add_ratio(report, n, "gauss", "structured");
        add_ratio(report, n, "gauss", "dft");
    }
    return report;
}

std::string to_csv(const BenchReport& report) {
    std::ostringstream os;
    os << "method,n,entry_bits_max,median_ns,min_ns,value_digest,validated\n";
    for (const auto& r : report.rows) {
        os << r.method << ',' << r.n << ',' << r.entry_bits_max << ',' << r.median_ns << ',' << r.min_ns << ','
           << r.value_digest << ',' << (r.validated ? "true" : "false") << '\n';
    }
    return os.str();
}

Json to_json(const BenchReport& report) {
    Json j;
    j["kind"] = report.kind;
    j["params"] = horacirc::to_json(report.params);
    Json rows = Json::array();
    for (const auto& r : report.rows) {
        rows.push_back(Json{{"method", r.method},
                            {"n", r.n},
                            {"entry_bits_max", r.entry_bits_max},
                            {"median_ns", r.median_ns},
                            {"min_ns", r.min_ns},
                            {"value_digest", r.value_digest},
                            {"validated", r.validated},
                            {"samples", r.samples},
                            {"timed_out", r.timed_out},
                            {"note", r.note ? Json(*r.note) : Json(nullptr)}});
    }
    j["rows"] = std::move(rows);
    Json bits = Json::array();
    for (const auto& b : report.entry_bits) bits.push_back(Json{{"n", b.n}, {"max", b.max}, {"mean", b.mean}});
    j["entry_bits"] = std::move(bits);
    Json ratios = Json::array();
    for (const auto& r : report.ratios)
        ratios.push_back(Json{{"n", r.n}, {"slow", r.slow}, {"fast", r.fast}, {"ratio", r.ratio}});
    j["ratios"] = std::move(ratios);
    return j;
}

}  // namespace horacirc::bench
