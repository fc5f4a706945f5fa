// langparams -- command line front end over the exact-arithmetic library.
#include "langparams/dualgroup.hpp"
#include "langparams/errors.hpp"
#include "langparams/fingroup.hpp"
#include "langparams/kostant.hpp"
#include "langparams/moduli.hpp"
#include "langparams/rootdata.hpp"
#include "langparams/serialize.hpp"
#include "langparams/typespec.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace lp = langparams;
using lp::exactalg::Int;
using lp::io::json;

namespace {

struct CommonOpts {
    std::string type_spec;
    std::string group;
    std::string twist = "none";
    std::string out_path;
    std::string format = "json";
    long q = 2;
    long p = 0;
    long e = 1;
    long f = 1;
    long ell = 3;
    int k = 1;
    long bound = 50;
    unsigned long long max_pairs = lp::moduli::kDefaultMaxPairs;
};

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(opts.out_path, std::ios::binary);
        if (!os) throw lp::ValidationError("cannot open output path " + opts.out_path);
        os << text;
    }
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

// Flat key,value CSV in sorted key order; arrays/objects are JSON-inlined.
std::string json_to_csv(const json& j) {
    std::ostringstream os;
    os << "key,value\n";
    for (auto it = j.begin(); it != j.end(); ++it) {
        const json& v = it.value();
        std::string text = v.is_string() ? v.get<std::string>() : v.dump();
        os << it.key() << "," << csv_escape(text) << "\n";
    }
    return os.str();
}

void emit_report(const CommonOpts& opts, const json& j) {
    if (opts.format == "json") {
        emit(opts, lp::io::dump_canonical(j));
    } else if (opts.format == "csv") {
        emit(opts, json_to_csv(j));
    } else {
        throw lp::ValidationError("unknown format " + opts.format);
    }
}

Int derive_p(long q) {
    Int qq = q;
    if (qq < 2) throw lp::ValidationError("q must be >= 2");
    for (Int d = 2; d * d <= qq; ++d)
        if (qq % d == 0) return d;
    return qq;
}

lp::dualgroup::ArithContext make_context(const CommonOpts& opts) {
    lp::dualgroup::ArithContext ctx;
    ctx.q = opts.q;
    ctx.p = opts.p > 0 ? Int(opts.p) : derive_p(opts.q);
    ctx.e = opts.e;
    ctx.f = opts.f;
    ctx.validate();
    return ctx;
}

lp::fingrp::GroupSpecFin parse_group(const CommonOpts& opts) {
    const std::string& g = opts.group;
    lp::fingrp::FiniteField field(opts.ell, opts.k);
    auto num = [&](size_t at) { return std::stoi(g.substr(at)); };
    if (g.rfind("GL", 0) == 0)
        return lp::fingrp::GroupSpecFin(lp::fingrp::GroupKind::GL, num(2), field);
    if (g.rfind("SL", 0) == 0)
        return lp::fingrp::GroupSpecFin(lp::fingrp::GroupKind::SL, num(2), field);
    if (g.rfind("Sp", 0) == 0)
        return lp::fingrp::GroupSpecFin(lp::fingrp::GroupKind::Sp, num(2), field);
    throw lp::UnsupportedTypeError(g);
}

std::string factored_chi(const lp::exactalg::IntPoly& chi) {
    auto fact = lp::exactalg::cyclotomic_factorization(chi);
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, mult] : fact.multiplicities) {
        if (!first) os << " ";
        first = false;
        os << "Phi" << n;
        if (mult > 1) os << "^" << mult;
    }
    if (!fact.remainder.is_zero() && fact.remainder.degree() > 0)
        os << (first ? "" : " ") << "(" << fact.remainder.str() << ")";
    return os.str();
}

int run_chi(const CommonOpts& opts, bool star) {
    auto tt = lp::typespec::build_type(opts.type_spec);
    lp::exactalg::IntPoly chi = lp::rootdata::chi_twisted(tt.datum, tt.beta);
    int h = lp::rootdata::twisted_coxeter(chi);
    json out;
    out["type"] = opts.type_spec;
    out["chi"] = lp::io::poly_to_json(chi);
    out["chi_display"] = chi.str();
    out["chi_factored"] = factored_chi(chi);
    out["h"] = h;
    if (star) {
        lp::exactalg::IntPoly cs = lp::rootdata::chi_star_from_chi(chi);
        out["chi_star"] = lp::io::poly_to_json(cs);
        out["chi_star_display"] = cs.str();
    }
    lp::exactalg::IntPoly cp = lp::rootdata::chi_prime(tt.datum, tt.beta);
    if (cp != chi) {
        out["chi_prime"] = lp::io::poly_to_json(cp);
        out["chi_prime_display"] = cp.str();
    }
    emit_report(opts, out);
    return 0;
}

int run_banal(const CommonOpts& opts) {
    auto ctx = make_context(opts);
    auto spec = lp::typespec::build_lgroup_spec(opts.type_spec, ctx);
    auto rep = lp::dualgroup::banal_report(spec);
    emit_report(opts, lp::io::banal_report_to_json(rep));
    return 0;
}

int run_compare_banal(const CommonOpts& opts) {
    auto ctx = make_context(opts);
    auto spec = lp::typespec::build_lgroup_spec(opts.type_spec, ctx);
    auto rows = lp::dualgroup::compare_banal(spec, opts.bound);
    if (opts.format == "csv") {
        std::ostringstream os;
        os << "prime,lg_banal_excluded,g_nonbanal\n";
        for (const auto& r : rows)
            os << r.prime.str() << "," << (r.lg_banal_excluded ? 1 : 0) << ","
               << (r.g_nonbanal ? 1 : 0) << "\n";
        emit(opts, os.str());
        return 0;
    }
    json arr = json::array();
    for (const auto& r : rows) {
        json jr;
        jr["prime"] = r.prime.str();
        jr["lg_banal_excluded"] = r.lg_banal_excluded;
        jr["g_nonbanal"] = r.g_nonbanal;
        arr.push_back(jr);
    }
    json out;
    out["comparison"] = arr;
    emit_report(opts, out);
    return 0;
}

int run_count_points(const CommonOpts& opts) {
    auto ctx = make_context(opts);
    auto spec = lp::typespec::build_lgroup_spec(opts.type_spec, ctx);
    Int count = lp::dualgroup::chevalley_steinberg(spec, ctx.q);
    json out;
    out["type"] = opts.type_spec;
    out["q"] = ctx.q.str();
    out["count"] = count.str();
    emit_report(opts, out);
    return 0;
}

int run_enumerate(const CommonOpts& opts, bool tangent_only) {
    if (opts.twist != "none")
        throw lp::ValidationError("only the trivial group twist is available from the CLI");
    auto spec = parse_group(opts);
    auto ctx = make_context(opts);
    if (ctx.p == spec.field.ell())
        throw lp::ValidationError("ell must differ from the residue characteristic p");
    lp::moduli::SemidirectData sd;
    sd.q = opts.q;
    auto group = lp::fingrp::enumerate_group(spec);
    sd.verify_relation(spec.field, group);
    auto points = lp::moduli::enumerate_z1(spec, sd, group, opts.max_pairs);
    auto chi = lp::moduli::dual_chi(spec);
    auto analyses = lp::moduli::analyze_points(spec, sd, points, ctx, chi);
    if (tangent_only) {
        std::map<long, std::uint64_t> dim_histogram;
        std::uint64_t unobstructed = 0;
        for (const auto& pa : analyses) {
            ++dim_histogram[pa.tangent.dim_tangent];
            if (pa.tangent.unobstructed) ++unobstructed;
        }
        json out;
        out["points"] = analyses.size();
        out["unobstructed"] = unobstructed;
        json hist;
        for (auto& [dim, cnt] : dim_histogram) hist[std::to_string(dim)] = cnt;
        out["tangent_dims"] = hist;
        emit_report(opts, out);
        return 0;
    }
    emit_report(opts, lp::io::point_list_to_json(spec, sd, analyses));
    return 0;
}

int run_torus_cocycles(const CommonOpts& opts) {
    if (opts.type_spec.empty() || opts.type_spec[0] != 'T')
        throw lp::ValidationError("torus-cocycles expects --type T<r>");
    int rank = std::stoi(opts.type_spec.substr(1));
    lp::exactalg::IntMatrix a_fr = lp::exactalg::IntMatrix::identity(rank);
    lp::exactalg::IntMatrix a_s = lp::exactalg::IntMatrix::identity(rank);
    if (opts.twist == "swap") {
        if (rank != 2) throw lp::ValidationError("swap twist needs rank 2");
        a_fr = lp::exactalg::IntMatrix(2, 2, {Int(0), Int(1), Int(1), Int(0)});
    } else if (opts.twist == "inv") {
        for (int i = 0; i < rank; ++i) a_fr.at(i, i) = -1;
    } else if (opts.twist != "none") {
        throw lp::ValidationError("twist must be none, swap, or inv");
    }
    auto st = lp::dualgroup::torus_cocycle_group(a_fr, a_s, opts.q);
    emit_report(opts, lp::io::cocycle_structure_to_json(st));
    return 0;
}

int run_components(const CommonOpts& opts) {
    auto spec = parse_group(opts);
    auto ctx = make_context(opts);
    if (ctx.p == spec.field.ell())
        throw lp::ValidationError("ell must differ from the residue characteristic p");
    lp::moduli::SemidirectData sd;
    sd.q = opts.q;
    auto group = lp::fingrp::enumerate_group(spec);
    sd.verify_relation(spec.field, group);
    auto points = lp::moduli::enumerate_z1(spec, sd, group, opts.max_pairs);
    auto classes = lp::moduli::inertial_classes(spec, points, group);
    json out = lp::io::inertial_classes_to_json(classes, spec.field);
    out["approximate_over_closure"] = true;
    emit_report(opts, out);
    return 0;
}

int run_kostant(const CommonOpts& opts) {
    auto frame = lp::kostant::principal_triple(opts.type_spec);
    std::optional<lp::kostant::PinnedOuter> beta;
    int beta_order = 1;
    if (opts.twist == "2" || opts.twist == "outer") {
        beta = lp::kostant::pinned_outer(frame);
        if (!beta) throw lp::ValidationError("no pinned outer automorphism for " + opts.type_spec);
        beta_order = 2;
    } else if (opts.twist != "none" && opts.twist != "1") {
        throw lp::ValidationError("kostant twist must be none/1 or outer/2");
    }
    lp::exactalg::Rat t(opts.q);  // evaluation point; reuses --q
    auto rep = lp::kostant::kostant_determinant(frame, beta ? &*beta : nullptr, t);
    emit_report(opts, lp::io::kostant_report_to_json(opts.type_spec, beta_order, t, rep));
    return 0;
}

int run_cohomology(const CommonOpts& opts) {
    // --type Z<n>, --twist s<a>,f<b> with sigma = x a, fr = x b on Z/n.
    if (opts.type_spec.size() < 2 || opts.type_spec[0] != 'Z')
        throw lp::ValidationError("cohomology expects --type Z<n>");
    long n = std::stol(opts.type_spec.substr(1));
    long s_mult = 1, f_mult = 1;
    if (opts.twist != "none") {
        std::istringstream is(opts.twist);
        std::string part;
        while (std::getline(is, part, ',')) {
            if (part.size() < 2) throw lp::ValidationError("bad twist " + opts.twist);
            if (part[0] == 's') s_mult = std::stol(part.substr(1));
            else if (part[0] == 'f') f_mult = std::stol(part.substr(1));
            else throw lp::ValidationError("bad twist " + opts.twist);
        }
    }
    // M = multiplicative order of the sigma action on Z/n.
    long m_order = 1;
    {
        long cur = ((s_mult % n) + n) % n;
        long acc = cur;
        while (acc != 1 % n) {
            acc = (acc * cur) % n;
            ++m_order;
            if (m_order > n) throw lp::BadActionError("sigma multiplier is not invertible mod n");
        }
    }
    lp::exactalg::IntMatrix sigma(1, 1, {Int(s_mult)});
    lp::exactalg::IntMatrix fr(1, 1, {Int(f_mult)});
    auto result = lp::moduli::cyclic_cohomology({n}, sigma, fr, opts.q, m_order, opts.p > 0 ? opts.p : 2);
    json out = lp::io::cohomology_to_json(result);
    out["m_order"] = m_order;
    emit_report(opts, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants of moduli of tame Langlands parameters"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--type", opts.type_spec, "type label (e.g. GL3, SO8^3, A2xT1)");
        cmd->add_option("--group", opts.group, "finite matrix group (GL<n>, SL<n>, Sp<2n>)");
        cmd->add_option("--twist", opts.twist, "twist selector (command specific)");
        cmd->add_option("--q", opts.q, "residue cardinality / relation exponent");
        cmd->add_option("--p", opts.p, "residue characteristic (derived from q when omitted)");
        cmd->add_option("--e", opts.e, "tame ramification index");
        cmd->add_option("--f", opts.f, "residue degree");
        cmd->add_option("--ell", opts.ell, "coefficient characteristic");
        cmd->add_option("--k", opts.k, "coefficient field extension degree");
        cmd->add_option("--bound", opts.bound, "prime search bound (compare-banal)");
        cmd->add_option("--max-pairs", opts.max_pairs, "pair enumeration override");
        cmd->add_option("--out", opts.out_path, "output path (stdout when omitted)");
        cmd->add_option("--format", opts.format, "json or csv");
        return cmd;
    };

    auto* chi = add_common(app.add_subcommand("chi", "twisted characteristic polynomial"));
    auto* chi_star = add_common(app.add_subcommand("chi-star", "chi* = prod of Phi_n up to h"));
    auto* banal = add_common(app.add_subcommand("banal", "banal prime report"));
    auto* cmp = add_common(app.add_subcommand("compare-banal", "LG-banal vs G-banal above h"));
    auto* count = add_common(app.add_subcommand("count-points", "Chevalley-Steinberg count"));
    auto* enumerate = add_common(app.add_subcommand("enumerate", "enumerate tame parameter points"));
    auto* tangent = add_common(app.add_subcommand("tangent", "tangent dimension summary"));
    auto* torus = add_common(app.add_subcommand("torus-cocycles", "torus cocycle group structure"));
    auto* components = add_common(app.add_subcommand("components", "inertial component classes"));
    auto* kostant = add_common(app.add_subcommand("kostant", "Kostant determinant identity (t = --q)"));
    auto* cohomology = add_common(app.add_subcommand("cohomology", "cyclic cohomology of Z/n"));

    CLI11_PARSE(app, argc, argv);

    try {
        if (chi->parsed()) return run_chi(opts, false);
        if (chi_star->parsed()) return run_chi(opts, true);
        if (banal->parsed()) return run_banal(opts);
        if (cmp->parsed()) return run_compare_banal(opts);
        if (count->parsed()) return run_count_points(opts);
        if (enumerate->parsed()) return run_enumerate(opts, false);
        if (tangent->parsed()) return run_enumerate(opts, true);
        if (torus->parsed()) return run_torus_cocycles(opts);
        if (components->parsed()) return run_components(opts);
        if (kostant->parsed()) return run_kostant(opts);
        if (cohomology->parsed()) return run_cohomology(opts);
    } catch (const lp::SizeGuardError& e) {
        std::cerr << "size guard: " << e.what() << "\n";
        return 2;
    } catch (const lp::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
