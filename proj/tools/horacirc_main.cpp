// horacirc: command-line front end for the Horadam circulant toolkit.
//
// Exit codes: 0 ok (audit: consistent), 1 audit integrity failure,
// 2 usage, 3 degenerate denominator, 4 singular matrix.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "horacirc/audit.hpp"
#include "horacirc/bench.hpp"
#include "horacirc/circulant.hpp"
#include "horacirc/closed_form.hpp"
#include "horacirc/decomposition.hpp"
#include "horacirc/errors.hpp"
#include "horacirc/horadam.hpp"
#include "horacirc/json_io.hpp"
#include "horacirc/oracle.hpp"

using namespace horacirc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInconsistent = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitSingular = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParamFlags {
    std::string preset;
    std::optional<long> a, b, p, q;

    void attach(CLI::App* cmd) {
        cmd->add_option("--preset", preset, "fibonacci, lucas, pell or pell-lucas");
        cmd->add_option("--a", a, "W0");
        cmd->add_option("--b", b, "W1");
        cmd->add_option("--p", p, "recurrence coefficient p");
        cmd->add_option("--q", q, "recurrence coefficient q");
    }

    bool given() const { return !preset.empty() || a || b || p || q; }

    // Preset as the base, individual flags override it. Without a preset all
    // four coefficients are required.
    HoradamParams resolve(std::optional<HoradamParams> fallback = std::nullopt) const {
        HoradamParams out;
        if (!preset.empty()) {
            auto found = HoradamParams::preset(preset);
            if (!found) throw UsageError("unknown preset '" + preset + "'");
            out = *found;
        } else if (!(a && b && p && q)) {
            if (fallback && !a && !b && !p && !q) return *fallback;
            throw UsageError("give --preset or all of --a --b --p --q");
        }
        if (a) out.a = *a;
        if (b) out.b = *b;
        if (p) out.p = *p;
        if (q) out.q = *q;
        return out;
    }
};

std::string join(const std::vector<Rational>& xs) {
    std::string out;
    for (const auto& x : xs) {
        if (!out.empty()) out += ' ';
        out += x.to_string();
    }
    return out;
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (double x : xs) {
        if (!out.empty()) out += ' ';
        out += fmt_double(x);
    }
    return out;
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << content;
}

// seq ------------------------------------------------------------------------

struct SeqCmd {
    ParamFlags params;
    std::size_t count = 10;
    std::string method = "recurrence";
    bool json = false;

    int run() const {
        const HoradamParams hp = params.resolve();
        std::vector<Rational> terms;
        if (method == "recurrence") {
            terms = seq(hp, count);
        } else {
            if (hp.discriminant() == 0)
                throw RepeatedRoot("binet form undefined: p^2 + 4q = 0 gives a repeated root; use --method recurrence");
            for (std::size_t k = 0; k <= count; ++k) terms.push_back(binet(hp, k).demote());
        }
        if (json) {
            Json arr = Json::array();
            for (const auto& t : terms) arr.push_back(to_json(t));
            emit(Json{{"params", to_json(hp)}, {"method", method}, {"terms", arr}});
        } else {
            std::cout << join(terms) << '\n';
        }
        return kExitOk;
    }
};

// det ------------------------------------------------------------------------

struct DetCmd {
    ParamFlags params;
    std::size_t n = 0;
    std::string method = "closed";
    bool json = false;

    int run() const {
        const HoradamParams hp = params.resolve();
        if ((method == "closed" || method == "gn") && n < 3) throw UsageError("--method " + method + " needs n >= 3");
        Json value;
        std::string text;
        if (method == "dft") {
            const Circulant c = from_params(hp, n);
            const double re = dft_det(c).real();
            if (std::isfinite(re)) {
                text = fmt_double(re);
                value = re;
            } else {
                const LogDet ld = dft_log_det(c);
                text = std::string(ld.sign < 0 ? "-" : "") + "exp(" + fmt_double(ld.log_abs) + ")";
                value = Json{{"sign", ld.sign}, {"log_abs", ld.log_abs}};
            }
        } else {
            Rational det;
            if (method == "closed")
                det = det_eq3(hp, n);
            else if (method == "gn")
                det = det_via_gn(hp, n);
            else
                det = bareiss_det(materialize(from_params(hp, n)));
            text = det.to_string();
            value = to_json(det);
        }
        if (json) {
            emit(Json{{"params", to_json(hp)}, {"n", n}, {"method", method}, {"det", value}});
        } else {
            std::cout << text << "\n# method: " << method << '\n';
        }
        return kExitOk;
    }
};

// inv ------------------------------------------------------------------------

struct InvCmd {
    ParamFlags params;
    std::size_t n = 0;
    std::string method = "gauss";
    bool json = false;

    int run() const {
        const HoradamParams hp = params.resolve();
        if (method == "gauss") return gauss(hp);
        if (method == "structured") return structured(hp);
        if (method == "printed") return printed(hp);
        return dft(hp);
    }

    int gauss(const HoradamParams& hp) const {
        const auto row = gauss_inverse(materialize(from_params(hp, n))).row(0);
        if (json) {
            Json arr = Json::array();
            for (const auto& x : row) arr.push_back(to_json(x));
            emit(Json{{"params", to_json(hp)}, {"n", n}, {"method", method}, {"first_row", arr}});
        } else {
            std::cout << join(row) << '\n';
        }
        return kExitOk;
    }

    int structured(const HoradamParams& hp) const {
        if (n < 3) throw UsageError("--method structured needs n >= 3");
        const StructuredInverse si = structured_inverse(hp, n);
        const auto row = si.P.row(0);
        std::string diagnostic;
        if (si.first_failure) {
            const auto& f = *si.first_failure;
            diagnostic = "P*W first differs from I at (" + std::to_string(f.row) + "," + std::to_string(f.col) +
                         "): " + f.actual.to_string() + " vs " + f.expected.to_string();
        } else if (!si.circulant) {
            diagnostic = "P is not circulant";
        }
        if (json) {
            Json arr = Json::array();
            for (const auto& x : row) arr.push_back(to_json(x));
            emit(Json{{"params", to_json(hp)},
                      {"n", n},
                      {"method", method},
                      {"first_row", arr},
                      {"valid", si.valid},
                      {"diagnostic", diagnostic.empty() ? Json(nullptr) : Json(diagnostic)}});
        } else {
            std::cout << join(row) << '\n';
            std::cout << "valid: " << (si.valid ? "true" : "false");
            if (!diagnostic.empty()) std::cout << " (" << diagnostic << ")";
            std::cout << '\n';
        }
        return kExitOk;
    }

    int printed(const HoradamParams& hp) const {
        using audit::FormulaId;
        if (n < 3) throw UsageError("--method printed needs n >= 3");
        const FormulaContext ctx = make_context(hp, n);
        struct Item {
            FormulaId id;
            const char* label;
            std::size_t position;
        };
        std::vector<Item> items = {{FormulaId::THM2_W1, "w1", 1}, {FormulaId::THM2_W2, "w2", 2}, {FormulaId::THM2_W3, "w3", 3}};
        if (n >= 4) items.push_back({FormulaId::THM2_W4, "w4", 4});
        if (n >= 5) items.push_back({FormulaId::THM2_W5, "w5", 5});
        items.push_back({FormulaId::THM2_WN, "wn", n});
        Json entries = Json::array();
        for (const auto& it : items) {
            const Rational v = audit::eval_thm2_entry(ctx, it.id);
            if (json)
                entries.push_back(Json{{"entry", it.label}, {"position", it.position}, {"value", to_json(v)}});
            else
                std::cout << it.label << " (position " << it.position << "): " << v << '\n';
        }
        std::optional<std::string> gap;
        if (n > 6) gap = "positions 6.." + std::to_string(n - 1) + ": no printed closed form";
        if (json) {
            emit(Json{{"params", to_json(hp)},
                      {"n", n},
                      {"method", method},
                      {"entries", entries},
                      {"not_printed", gap ? Json(*gap) : Json(nullptr)}});
        } else if (gap) {
            std::cout << *gap << '\n';
        }
        return kExitOk;
    }

    int dft(const HoradamParams& hp) const {
        const auto row = dft_inverse(from_params(hp, n));
        if (json)
            emit(Json{{"params", to_json(hp)}, {"n", n}, {"method", method}, {"first_row", row}});
        else
            std::cout << join(row) << '\n';
        return kExitOk;
    }
};

// audit ----------------------------------------------------------------------

std::string format_rate(std::size_t match, std::size_t evaluated) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * double(match) / double(evaluated));
    return buf;
}

std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stol(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("bad integer list '" + s + "'");
        }
    }
    return out;
}

struct AuditCmd {
    ParamFlags params;
    long a_min = -2, a_max = 2, b_min = -2, b_max = 2;
    std::string p_values = "1,2,3";
    std::string q_values = "1,2,3";
    std::size_t n_min = 3, n_max = 10;
    std::vector<std::string> formulas;
    std::string convention = "plus-q";
    std::string out;
    unsigned jobs = 0;
    bool json = false;

    audit::GridSpec grid() const {
        audit::GridSpec spec;
        if (params.given())
            spec.params = {params.resolve()};
        else
            spec.params = audit::GridSpec::enumerate(a_min, a_max, b_min, b_max, parse_long_list(p_values),
                                                     parse_long_list(q_values));
        if (n_min < 3 || n_max < n_min) throw UsageError("need 3 <= --n-min <= --n-max");
        spec.n_min = n_min;
        spec.n_max = n_max;
        for (const auto& f : formulas) {
            std::stringstream in(f);
            std::string name;
            while (std::getline(in, name, ',')) {
                auto id = audit::parse_formula(name);
                if (!id) throw UsageError("unknown formula '" + name + "'");
                spec.formulas.push_back(*id);
            }
        }
        return spec;
    }

    static void print_summary(const audit::AuditSummary& s, Convention c) {
        std::printf("convention: %s\n", to_string(c));
        std::printf("%-18s %8s %8s %8s %10s\n", "formula", "match", "mismatch", "skipped", "match-rate");
        for (auto id : audit::all_formulas()) {
            const auto& t = s.of(id);
            if (t.total() == 0) continue;
            const std::size_t evaluated = t.match + t.mismatch;
            std::string rate = evaluated ? format_rate(t.match, evaluated) : "-";
            std::printf("%-18s %8zu %8zu %8zu %10s\n", audit::to_string(id), t.match, t.mismatch, t.skipped, rate.c_str());
        }
        for (const auto& e : s.errata)
            std::printf("%s %s: %s (%zu/%zu)\n", e.id.c_str(), audit::to_string(e.formula), e.description.c_str(),
                        e.mismatches, e.evaluated);
        if (s.consistent()) {
            std::printf("integrity: ok\n");
        } else {
            std::printf("integrity: %zu violation(s)\n", s.integrity_violations.size());
            for (const auto& v : s.integrity_violations) std::printf("  %s\n", v.c_str());
        }
    }

    int run() const {
        audit::GridSpec spec = grid();
        std::vector<Convention> conventions;
        if (convention == "plus-q" || convention == "both") conventions.push_back(Convention::PlusQ);
        if (convention == "minus-q" || convention == "both") conventions.push_back(Convention::MinusQ);

        Json grid_json{{"params", Json::array()}, {"n_min", spec.n_min}, {"n_max", spec.n_max}, {"formulas", Json::array()}};
        for (const auto& hp : spec.params) grid_json["params"].push_back(to_json(hp));
        for (auto id : spec.formulas) grid_json["formulas"].push_back(audit::to_string(id));

        Json runs = Json::array();
        bool consistent = true;
        for (Convention c : conventions) {
            spec.convention = c;
            const auto reports = audit::run_grid(spec, jobs);
            const auto summary = audit::summarize(reports);
            consistent = consistent && summary.consistent();
            Json rj = Json::array();
            for (const auto& r : reports) rj.push_back(to_json(r));
            runs.push_back(Json{{"convention", to_string(c)}, {"reports", std::move(rj)}, {"summary", to_json(summary)}});
            if (!json) print_summary(summary, c);
        }
        Json doc{{"grid", std::move(grid_json)}, {"runs", std::move(runs)}};
        if (!out.empty()) write_file(out, doc.dump(1) + "\n");
        if (json) {
            Json brief{{"grid", doc["grid"]}, {"runs", Json::array()}};
            for (const auto& r : doc["runs"])
                brief["runs"].push_back(Json{{"convention", r["convention"]}, {"summary", r["summary"]}});
            emit(brief);
        }
        return consistent ? kExitOk : kExitInconsistent;
    }
};

// bench ----------------------------------------------------------------------

struct BenchCmd {
    ParamFlags params;
    std::string kind;
    std::string sizes = "8,16,32";
    unsigned repeat = 3;
    std::vector<std::string> methods;
    std::string out;
    std::string json_out;
    bool json = false;

    int run() const {
        const HoradamParams hp = params.resolve(HoradamParams::fibonacci());
        std::vector<std::size_t> ns;
        for (long v : parse_long_list(sizes)) {
            if (v < 3) throw UsageError("--sizes entries must be >= 3");
            ns.push_back(static_cast<std::size_t>(v));
        }
        bench::BenchOptions opt;
        for (const auto& m : methods) {
            std::stringstream in(m);
            std::string name;
            while (std::getline(in, name, ',')) opt.methods.push_back(name);
        }
        opt.timeout_secs = bench::timeout_from_env(opt.timeout_secs);
        const bench::BenchReport r =
            kind == "det" ? bench::bench_det(hp, ns, repeat, opt) : bench::bench_inverse(hp, ns, repeat, opt);
        const std::string csv = bench::to_csv(r);
        if (!out.empty()) write_file(out, csv);
        if (!json_out.empty()) write_file(json_out, bench::to_json(r).dump(2) + "\n");
        if (json) {
            emit(bench::to_json(r));
            return kExitOk;
        }
        std::cout << csv;
        for (const auto& ratio : r.ratios)
            std::printf("# n=%zu %s/%s = %s\n", ratio.n, ratio.slow.c_str(), ratio.fast.c_str(),
                        fmt_double(ratio.ratio).c_str());
        for (const auto& row : r.rows)
            if (row.timed_out) std::printf("# %s n=%zu hit the time budget after %zu sample(s)\n", row.method.c_str(), row.n, row.samples);
        return kExitOk;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact determinants, inverses and formula audits for Horadam circulant matrices"};
    app.require_subcommand(1);

    SeqCmd seq_cmd;
    auto* seq = app.add_subcommand("seq", "print W0..W_count");
    seq_cmd.params.attach(seq);
    seq->add_option("--count", seq_cmd.count, "last index")->capture_default_str();
    seq->add_option("--method", seq_cmd.method)->check(CLI::IsMember({"recurrence", "binet"}))->capture_default_str();
    seq->add_flag("--json", seq_cmd.json);

    DetCmd det_cmd;
    auto* det = app.add_subcommand("det", "determinant of the n x n circulant");
    det_cmd.params.attach(det);
    det->add_option("--n", det_cmd.n)->required();
    det->add_option("--method", det_cmd.method)->check(CLI::IsMember({"closed", "gn", "bareiss", "dft"}))->capture_default_str();
    det->add_flag("--json", det_cmd.json);

    InvCmd inv_cmd;
    auto* inv = app.add_subcommand("inv", "first row of the inverse");
    inv_cmd.params.attach(inv);
    inv->add_option("--n", inv_cmd.n)->required();
    inv->add_option("--method", inv_cmd.method)
        ->check(CLI::IsMember({"gauss", "structured", "printed", "dft"}))
        ->capture_default_str();
    inv->add_flag("--json", inv_cmd.json);

    AuditCmd audit_cmd;
    auto* aud = app.add_subcommand("audit", "compare printed formulas with the oracles over a grid");
    audit_cmd.params.attach(aud);
    aud->add_option("--a-min", audit_cmd.a_min)->capture_default_str();
    aud->add_option("--a-max", audit_cmd.a_max)->capture_default_str();
    aud->add_option("--b-min", audit_cmd.b_min)->capture_default_str();
    aud->add_option("--b-max", audit_cmd.b_max)->capture_default_str();
    aud->add_option("--p-values", audit_cmd.p_values)->capture_default_str();
    aud->add_option("--q-values", audit_cmd.q_values)->capture_default_str();
    aud->add_option("--n-min", audit_cmd.n_min)->capture_default_str();
    aud->add_option("--n-max", audit_cmd.n_max)->capture_default_str();
    aud->add_option("--formula", audit_cmd.formulas, "formula id(s), comma separated or repeated");
    aud->add_option("--convention", audit_cmd.convention)
        ->check(CLI::IsMember({"plus-q", "minus-q", "both"}))
        ->capture_default_str();
    aud->add_option("--out", audit_cmd.out, "write the full JSON report here");
    aud->add_option("--jobs", audit_cmd.jobs, "worker threads (0 = hardware)")->capture_default_str();
    aud->add_flag("--json", audit_cmd.json);

    BenchCmd bench_cmd;
    auto* ben = app.add_subcommand("bench", "time determinant or inverse strategies");
    bench_cmd.params.attach(ben);
    ben->add_option("kind", bench_cmd.kind)->required()->check(CLI::IsMember({"det", "inverse"}));
    ben->add_option("--sizes", bench_cmd.sizes)->capture_default_str();
    ben->add_option("--repeat", bench_cmd.repeat)->check(CLI::PositiveNumber)->capture_default_str();
    ben->add_option("--methods", bench_cmd.methods);
    ben->add_option("--out", bench_cmd.out, "CSV output file");
    ben->add_option("--json-out", bench_cmd.json_out, "JSON output file");
    ben->add_flag("--json", bench_cmd.json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*seq) return seq_cmd.run();
        if (*det) return det_cmd.run();
        if (*inv) return inv_cmd.run();
        if (*aud) return audit_cmd.run();
        return bench_cmd.run();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DegenerateCase& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const SingularMatrix& e) {
        std::cerr << "error: singular: " << e.what() << '\n';
        return kExitSingular;
    } catch (const NumericallySingular& e) {
        std::cerr << "error: singular: " << e.what() << '\n';
        return kExitSingular;
    } catch (const RepeatedRoot& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInconsistent;
    }
}
