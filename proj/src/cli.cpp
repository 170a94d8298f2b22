#include "paraspin/cli.hpp"

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "paraspin/analytic.hpp"
#include "paraspin/errors.hpp"
#include "paraspin/fixtures.hpp"
#include "paraspin/gritsenko.hpp"
#include "paraspin/parallel.hpp"
#include "paraspin/pipeline.hpp"
#include "paraspin/quadforms.hpp"
#include "paraspin/report.hpp"

namespace paraspin {

namespace {

struct CliOptions {
    std::string level;
    i64 d = 0;
    bool d_set = false;
    i64 n_max = 0;
    double tol = -1.0;
    std::string coeff_file;
    std::string jacobi;
    std::string cstar;
    std::string twin;
    bool json = false;
    std::string fixtures;
    i64 d_min = -199;
    i64 d_max = 300;
    int threads = 0;
};

CurveSpec find_curve(const std::string& dir, const std::string& key) {
    const auto curves = load_curves(dir);
    const auto it = curves.find(key);
    if (it == curves.end()) {
        std::string keys;
        for (const auto& [k, c] : curves) keys += (keys.empty() ? "" : ", ") + k;
        throw InvalidInputError("unknown level '" + key + "'; available: " + keys);
    }
    return it->second;
}

i64 numeric_level(const std::string& s) {
    try {
        std::size_t pos = 0;
        const i64 v = std::stoll(s, &pos);
        if (pos == s.size() && v >= 2) return v;
    } catch (const std::exception&) {
    }
    throw InvalidInputError("expected a numeric level, got '" + s + "'");
}

std::string join_i64_list(const std::vector<i64>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out + "]";
}

int run_curves(const CliOptions& o) {
    const auto curves = load_curves(resolve_fixtures_dir(o.fixtures));
    for (const auto& [key, c] : curves) {
        if (!o.level.empty() && key != o.level) continue;
        if (o.json) {
            std::printf("{\"key\": \"%s\", \"level\": %lld, \"al_sign\": %d, \"lambda_p\": %lld, "
                        "\"f\": %s, \"h\": %s}\n",
                        key.c_str(), static_cast<long long>(c.level), c.al_sign,
                        static_cast<long long>(c.lambda_p), join_i64_list(c.f).c_str(),
                        join_i64_list(c.h).c_str());
        } else {
            std::printf("%-5s p=%lld eps=%+d lambda_p=%lld f=%s h=%s\n", key.c_str(),
                        static_cast<long long>(c.level), c.al_sign,
                        static_cast<long long>(c.lambda_p), join_i64_list(c.f).c_str(),
                        join_i64_list(c.h).c_str());
        }
    }
    if (!o.level.empty() && curves.find(o.level) == curves.end()) {
        throw InvalidInputError("unknown level '" + o.level + "'");
    }
    return 0;
}

int run_count(const CliOptions& o) {
    const CurveSpec curve = find_curve(resolve_fixtures_dir(o.fixtures), o.level);
    const i64 bound = o.n_max > 0 ? o.n_max : 1000;
    const CountSweep sweep = count_sweep(curve, bound, o.threads);
    for (i64 q : sweep.repaired_primes) {
        std::fprintf(stderr, "note: model substituted to gain good reduction at %lld\n",
                     static_cast<long long>(q));
    }
    for (i64 q : sweep.skipped) {
        std::fprintf(stderr, "note: skipped singular prime %lld\n", static_cast<long long>(q));
    }
    if (o.json) {
        for (const PointCounts& pc : sweep.counts) {
            std::printf("{\"q\": %lld, \"N1\": %lld, \"N2\": %lld}\n",
                        static_cast<long long>(pc.q), static_cast<long long>(pc.n1),
                        static_cast<long long>(pc.n2));
        }
    } else {
        std::printf("q,N1,N2\n");
        for (const PointCounts& pc : sweep.counts) {
            std::printf("%lld,%lld,%lld\n", static_cast<long long>(pc.q),
                        static_cast<long long>(pc.n1), static_cast<long long>(pc.n2));
        }
    }
    return 0;
}

int run_central(const CliOptions& o) {
    const std::string dir = resolve_fixtures_dir(o.fixtures);
    const CurveSpec curve = find_curve(dir, o.level);
    const ValueTable table = load_values(dir, o.level);
    const double tol = o.tol > 0 ? o.tol : 1e-8;
    const CentralReport rep = central_report(curve, table, o.d, o.n_max, tol, o.threads);
    std::fputs((o.json ? render_central_json(rep) : render_central_text(rep)).c_str(), stdout);
    return 0;
}

int run_verify(const CliOptions& o) {
    const std::string dir = resolve_fixtures_dir(o.fixtures);
    const CurveSpec curve = find_curve(dir, o.level);
    const ValueTable table = load_values(dir, o.level);
    VerifyOptions opt;
    opt.n_max = o.n_max;
    opt.tol = o.tol > 0 ? o.tol : 1e-3;
    opt.d_min = o.d_min;
    opt.threads = o.threads;
    const ConjectureReport rep = verify_level(curve, table, opt);
    std::fputs((o.json ? render_verify_json(rep) : render_verify_text(rep)).c_str(), stdout);
    return 0;
}

int run_classnum(const CliOptions& o) {
    const ClassData cd = class_data(o.d);
    std::printf("{\"D\":%lld,\"h\":%lld,\"w\":%lld}\n", static_cast<long long>(o.d),
                static_cast<long long>(cd.h), static_cast<long long>(cd.w));
    return 0;
}

int run_classes(const CliOptions& o) {
    const i64 p = numeric_level(o.level);
    const OrbitDecomposition od = gamma0p_orbits(o.d, p);
    if (o.json) {
        std::string reps;
        for (const OrbitRep& r : od.reps) {
            if (!reps.empty()) reps += ", ";
            reps += "{\"a0\": " + std::to_string(r.form.a0) + ", \"b\": " +
                    std::to_string(r.form.b) + ", \"c\": " + std::to_string(r.form.c) +
                    ", \"epsilon\": " + std::to_string(r.epsilon) + "}";
        }
        std::printf("{\"D\": %lld, \"p\": %lld, \"h\": %lld, \"w\": %lld, \"s\": %lld, "
                    "\"stabilizer_sum\": \"%s\", \"reps\": [%s]}\n",
                    static_cast<long long>(od.disc), static_cast<long long>(od.level),
                    static_cast<long long>(od.h), static_cast<long long>(od.w),
                    static_cast<long long>(od.s), od.stabilizer_sum().str().c_str(), reps.c_str());
    } else {
        std::printf("D=%lld p=%lld: h=%lld w=%lld s=%lld, %zu orbits, sum 1/eps = %s\n",
                    static_cast<long long>(od.disc), static_cast<long long>(od.level),
                    static_cast<long long>(od.h), static_cast<long long>(od.w),
                    static_cast<long long>(od.s), od.reps.size(),
                    od.stabilizer_sum().str().c_str());
        for (const OrbitRep& r : od.reps) {
            std::printf("  (%lld, %lld, %lld)  eps=%lld\n", static_cast<long long>(r.form.a0),
                        static_cast<long long>(r.form.b), static_cast<long long>(r.form.c),
                        static_cast<long long>(r.epsilon));
        }
    }
    return 0;
}

int run_lemma_check(const CliOptions& o) {
    std::vector<i64> levels;
    if (!o.level.empty()) {
        levels.push_back(numeric_level(o.level));
    } else {
        levels = {277, 349, 353, 389, 461, 523, 587};
    }
    if (o.d_max < 4) throw InvalidInputError("--dmax must be at least 4");
    for (i64 p : levels) {
        i64 checked = 0;
        for (i64 d = -3; d > -o.d_max; --d) {
            if (!is_fundamental_discriminant(d) || d % p == 0) continue;
            if (!solvable(d, p)) continue;
            const OrbitDecomposition od = gamma0p_orbits(d, p);
            if (!(od.stabilizer_sum() == Rational(od.h, od.w))) {
                throw InternalCheckError("stabilizer sum differs from h/w at p=" +
                                         std::to_string(p) + ", D=" + std::to_string(d));
            }
            ++checked;
        }
        if (o.json) {
            std::printf("{\"p\": %lld, \"checked\": %lld, \"ok\": true}\n",
                        static_cast<long long>(p), static_cast<long long>(checked));
        } else {
            std::printf("level %lld: %lld discriminants, every sum 1/eps equals h/w\n",
                        static_cast<long long>(p), static_cast<long long>(checked));
        }
    }
    return 0;
}

int run_avg(const CliOptions& o) {
    const i64 p = numeric_level(o.level);
    const FourierCoefficientTable tbl = load_coefficient_csv(o.coeff_file, p);
    const Rational a = average_ad(tbl, o.d, p);
    std::string twin_diag;
    bool twin_ran = false;
    if (!o.twin.empty()) {
        twin_ran = true;
        twin_diag = minus_space_vanishing_check(tbl, load_twin_csv(o.twin), o.d, p);
    }
    if (o.json) {
        std::string line = "{\"D\": " + std::to_string(o.d) + ", \"p\": " + std::to_string(p) +
                           ", \"A\": \"" + a.str() + "\"";
        if (twin_ran) {
            line += ", \"twin_check\": \"" + (twin_diag.empty() ? "ok" : twin_diag) + "\"";
        }
        std::printf("%s}\n", line.c_str());
    } else {
        std::printf("A(%lld) = %s\n", static_cast<long long>(o.d), a.str().c_str());
        if (twin_ran) {
            std::printf("twin check: %s\n", twin_diag.empty() ? "ok" : twin_diag.c_str());
        }
    }
    return twin_ran && !twin_diag.empty() ? 1 : 0;
}

int run_grit(const CliOptions& o) {
    const i64 p = numeric_level(o.level);
    JacobiCoefficientTable jt = [&] {
        if (!o.jacobi.empty()) return load_jacobi_csv(o.jacobi, p);
        if (o.cstar.rfind("const:", 0) == 0) {
            return make_constant_cstar(p, std::stoll(o.cstar.substr(6)));
        }
        if (o.cstar.rfind("rand:", 0) == 0) {
            return make_pseudorandom_cstar(p, std::stoull(o.cstar.substr(5)));
        }
        throw InvalidInputError("provide --jacobi FILE or --cstar const:V / rand:SEED");
    }();

    std::vector<i64> ds;
    if (o.d_set) {
        ds.push_back(o.d);
    } else {
        for (i64 d = -3; d > -o.d_max; --d) {
            if (is_fundamental_discriminant(d) && d % p != 0) ds.push_back(d);
        }
    }
    bool all_ok = true;
    for (i64 d : ds) {
        const AverageIdentityResult r = verify_lift_average(jt, d, p);
        all_ok = all_ok && r.equal;
        if (o.json) {
            std::printf("{\"D\": %lld, \"p\": %lld, \"lhs\": \"%s\", \"rhs\": \"%s\", "
                        "\"equal\": %s}\n",
                        static_cast<long long>(d), static_cast<long long>(p), r.lhs.str().c_str(),
                        r.rhs.str().c_str(), r.equal ? "true" : "false");
        } else {
            std::printf("D=%lld: A(D) = %s, (h/w) c*(D) = %s  %s\n", static_cast<long long>(d),
                        r.lhs.str().c_str(), r.rhs.str().c_str(), r.equal ? "ok" : "MISMATCH");
        }
    }
    return all_ok ? 0 : 1;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"numerical verification of central-value identities for paramodular forms"};
    app.require_subcommand(1);
    CliOptions o;

    auto add_common = [&](CLI::App* cmd, bool with_level) {
        if (with_level) cmd->add_option("--level", o.level, "level handle or prime");
        cmd->add_flag("--json", o.json, "machine-readable output");
        cmd->add_option("--fixtures", o.fixtures, "fixtures directory");
        cmd->add_option("--threads", o.threads, "worker threads (0 = auto)");
    };

    CLI::App* curves_cmd = app.add_subcommand("curves", "list the built-in curve models");
    add_common(curves_cmd, true);

    CLI::App* count_cmd = app.add_subcommand("count", "point counts at good primes");
    add_common(count_cmd, true);
    count_cmd->get_option("--level")->required();
    count_cmd->add_option("--nmax", o.n_max, "counting bound (default 1000)");

    CLI::App* central_cmd = app.add_subcommand("central", "one twisted central value");
    add_common(central_cmd, true);
    central_cmd->get_option("--level")->required();
    central_cmd->add_option("-D,--disc", o.d, "fundamental discriminant < 0")->required();
    central_cmd->add_option("--nmax", o.n_max, "expansion length (0 = automatic)");
    central_cmd->add_option("--tol", o.tol, "tail tolerance (default 1e-8)");

    CLI::App* verify_cmd = app.add_subcommand("verify", "verify a level against its reference table");
    add_common(verify_cmd, true);
    verify_cmd->get_option("--level")->required();
    verify_cmd->add_option("--nmax", o.n_max, "expansion length (0 = automatic)");
    verify_cmd->add_option("--tol", o.tol, "per-row tail tolerance (default 1e-3)");
    verify_cmd->add_option("--dmin", o.d_min, "most negative discriminant (default -199)");

    CLI::App* classnum_cmd = app.add_subcommand("classnum", "class number and unit count");
    classnum_cmd->add_option("-D,--disc", o.d, "fundamental discriminant < 0")->required();

    CLI::App* classes_cmd = app.add_subcommand("classes", "extended-group orbit decomposition");
    add_common(classes_cmd, true);
    classes_cmd->get_option("--level")->required();
    classes_cmd->add_option("-D,--disc", o.d, "fundamental discriminant < 0")->required();

    CLI::App* lemma_cmd = app.add_subcommand("lemma-check", "stabilizer sums vs class numbers");
    add_common(lemma_cmd, true);
    lemma_cmd->add_option("--dmax", o.d_max, "check fundamental -dmax < D < 0 (default 300)");

    CLI::App* avg_cmd = app.add_subcommand("avg", "orbit average A(D) from a coefficient table");
    add_common(avg_cmd, true);
    avg_cmd->get_option("--level")->required();
    avg_cmd->add_option("-D,--disc", o.d, "fundamental discriminant < 0")->required();
    avg_cmd->add_option("--coeff-file", o.coeff_file, "CSV a0,b,c,value")->required();
    avg_cmd->add_option("--twin", o.twin, "CSV twin pairing; runs the vanishing check");

    CLI::App* grit_cmd = app.add_subcommand("grit", "lift coefficient-average identity");
    add_common(grit_cmd, true);
    grit_cmd->get_option("--level")->required();
    CLI::Option* grit_d = grit_cmd->add_option("-D,--disc", o.d, "single discriminant");
    grit_cmd->add_option("--dmax", o.d_max, "sweep -dmax < D < 0 when -D absent (default 300)");
    grit_cmd->add_option("--jacobi", o.jacobi, "CSV n,r,c of Jacobi coefficients");
    grit_cmd->add_option("--cstar", o.cstar, "synthetic coefficients: const:V or rand:SEED");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    o.d_set = grit_d->count() > 0;

    try {
        if (curves_cmd->parsed()) return run_curves(o);
        if (count_cmd->parsed()) return run_count(o);
        if (central_cmd->parsed()) return run_central(o);
        if (verify_cmd->parsed()) return run_verify(o);
        if (classnum_cmd->parsed()) return run_classnum(o);
        if (classes_cmd->parsed()) return run_classes(o);
        if (lemma_cmd->parsed()) return run_lemma_check(o);
        if (avg_cmd->parsed()) return run_avg(o);
        if (grit_cmd->parsed()) return run_grit(o);
        return 2;
    } catch (const InsufficientPrecisionError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        if (e.required_n_max > 0) {
            std::fprintf(stderr, "hint: rerun with --nmax %lld or larger\n",
                         static_cast<long long>(e.required_n_max));
        }
        return 3;
    } catch (const FixtureError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const InvalidInputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

} // namespace paraspin
