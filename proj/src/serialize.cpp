#include "langparams/serialize.hpp"

#include "langparams/errors.hpp"
#include "langparams/typespec.hpp"

namespace langparams::io {

json poly_to_json(const exactalg::IntPoly& p) {
    json arr = json::array();
    for (const auto& c : p.coeffs()) arr.push_back(c.str());
    return arr;
}

exactalg::IntPoly poly_from_json(const json& j) {
    std::vector<exactalg::Int> c;
    for (const auto& v : j) c.emplace_back(v.get<std::string>());
    return exactalg::IntPoly(std::move(c));
}

json matrix_to_json(const exactalg::IntMatrix& m) {
    json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    json arr = json::array();
    for (const auto& v : m.entries()) arr.push_back(v.str());
    out["entries"] = arr;
    return out;
}

exactalg::IntMatrix matrix_from_json(const json& j) {
    int rows = j.at("rows").get<int>();
    int cols = j.at("cols").get<int>();
    std::vector<exactalg::Int> entries;
    for (const auto& v : j.at("entries")) entries.emplace_back(v.get<std::string>());
    return exactalg::IntMatrix(rows, cols, std::move(entries));
}

json fqmatrix_to_json(const fingrp::FqMatrix& m, const fingrp::FiniteField& f) {
    json out;
    out["n"] = m.n;
    out["ell"] = f.ell();
    out["k"] = f.k();
    out["entries"] = m.e;
    return out;
}

fingrp::FqMatrix fqmatrix_from_json(const json& j) {
    fingrp::FqMatrix m;
    m.n = j.at("n").get<int>();
    m.e = j.at("entries").get<std::vector<int>>();
    return m;
}

json prime_set_to_json(const std::set<exactalg::Int>& s) {
    json arr = json::array();
    for (const auto& p : s) arr.push_back(p.str());
    return arr;
}

json banal_report_to_json(const dualgroup::BanalReport& rep) {
    json out;
    out["chi"] = poly_to_json(rep.chi);
    out["chi_star"] = poly_to_json(rep.chi_star);
    out["h"] = rep.h;
    out["excluded_general"] = prime_set_to_json(rep.excluded_general);
    if (rep.excluded_classical)
        out["excluded_classical"] = prime_set_to_json(*rep.excluded_classical);
    out["g_nonbanal"] = prime_set_to_json(rep.g_nonbanal);
    if (rep.chi_prime) out["chi_prime"] = poly_to_json(*rep.chi_prime);
    if (rep.excluded_corrected)
        out["excluded_corrected"] = prime_set_to_json(*rep.excluded_corrected);
    return out;
}

json lgroup_spec_to_json(const dualgroup::LGroupSpec& spec) {
    json out;
    json factors = json::array();
    for (const auto& fac : spec.factors) {
        json jf;
        jf["type"] = fac.datum.label;
        jf["f"] = fac.f;
        jf["twist_order"] = static_cast<long>(fac.twist.order);
        factors.push_back(jf);
    }
    out["factors"] = factors;
    json ab;
    ab["rank"] = spec.abelian_rank;
    if (spec.abelian_rank > 0) ab["fr_matrix"] = matrix_to_json(spec.abelian_fr);
    out["abelian"] = ab;
    json ctx;
    ctx["p"] = spec.context.p.str();
    ctx["q"] = spec.context.q.str();
    ctx["e"] = spec.context.e;
    ctx["f"] = spec.context.f;
    out["context"] = ctx;
    return out;
}

dualgroup::LGroupSpec lgroup_spec_from_json(const json& j) {
    dualgroup::LGroupSpec spec;
    for (const auto& jf : j.at("factors")) {
        std::string type = jf.at("type").get<std::string>();
        long f = jf.value("f", 1L);
        int twist = jf.value("twist_order", 1);
        dualgroup::LFactor fac;
        fac.datum = rootdata::build_root_datum_for_twist(type, twist);
        fac.f = f;
        fac.twist = twist == 1 ? rootdata::trivial_automorphism(fac.datum)
                               : rootdata::standard_twist(fac.datum, twist);
        spec.factors.push_back(std::move(fac));
    }
    const json& ab = j.at("abelian");
    spec.abelian_rank = ab.at("rank").get<long>();
    if (spec.abelian_rank > 0) {
        if (ab.contains("fr_matrix"))
            spec.abelian_fr = matrix_from_json(ab.at("fr_matrix"));
        else
            spec.abelian_fr = exactalg::IntMatrix::identity(static_cast<int>(spec.abelian_rank));
    }
    const json& ctx = j.at("context");
    spec.context.p = exactalg::Int(ctx.at("p").get<std::string>());
    spec.context.q = exactalg::Int(ctx.at("q").get<std::string>());
    spec.context.e = ctx.value("e", 1L);
    spec.context.f = ctx.value("f", 1L);
    return spec;
}

namespace {

const char* kind_name(fingrp::GroupKind k) {
    switch (k) {
        case fingrp::GroupKind::GL: return "GL";
        case fingrp::GroupKind::SL: return "SL";
        case fingrp::GroupKind::Sp: return "Sp";
    }
    return "?";
}

}  // namespace

json point_list_to_json(const fingrp::GroupSpecFin& spec, const moduli::SemidirectData& sd,
                        const std::vector<moduli::PointAnalysis>& points) {
    json out;
    json js;
    js["kind"] = kind_name(spec.kind);
    js["n"] = spec.n;
    js["ell"] = spec.field.ell();
    js["k"] = spec.field.k();
    out["spec"] = js;
    json jsd;
    jsd["q"] = sd.q;
    jsd["theta_fr"] = sd.theta_fr.kind == moduli::GroupAut::Kind::Trivial ? "trivial" : "conj";
    jsd["theta_s"] = sd.theta_s.kind == moduli::GroupAut::Kind::Trivial ? "trivial" : "conj";
    out["sd"] = jsd;
    json arr = json::array();
    for (const auto& pa : points) {
        json jp;
        jp["F0"] = fqmatrix_to_json(pa.pt.f0, spec.field);
        jp["sigma0"] = fqmatrix_to_json(pa.pt.sigma0, spec.field);
        jp["ss"] = fqmatrix_to_json(pa.pt.sigma_ss, spec.field);
        jp["u"] = fqmatrix_to_json(pa.pt.sigma_u, spec.field);
        json jt;
        jt["dim"] = pa.tangent.dim_tangent;
        jt["h0"] = pa.tangent.dim_h0_twist;
        jt["unobstructed"] = pa.tangent.unobstructed;
        jp["tangent"] = jt;
        json jb;
        jb["jordan_ok"] = pa.bounds.jordan_ok;
        jb["unipotent_ok"] = pa.bounds.unipotent_ok;
        jb["estimate_ok"] = pa.bounds.estimate_ok;
        jp["bounds"] = jb;
        arr.push_back(jp);
    }
    out["points"] = arr;
    return out;
}

json cocycle_structure_to_json(const dualgroup::CocycleGroupStructure& s) {
    json out;
    out["free_rank"] = s.free_rank;
    json t = json::array();
    for (const auto& d : s.torsion) t.push_back(d.str());
    out["torsion"] = t;
    return out;
}

json kostant_report_to_json(const std::string& algebra, int beta_order, const exactalg::Rat& t,
                            const kostant::KostantDetReport& rep) {
    json out;
    out["algebra"] = algebra;
    out["beta_order"] = beta_order;
    out["t"] = Rat(t).str();
    out["det"] = rep.det.str();
    out["chi_at_t2"] = rep.chi_at_t2.str();
    out["sign"] = rep.sign;
    return out;
}

json cohomology_to_json(const moduli::CyclicCohomology& c) {
    auto structure = [](const moduli::AbelianStructure& s) {
        json arr = json::array();
        for (const auto& d : s.invariant_factors) arr.push_back(d.str());
        return arr;
    };
    json out;
    out["h1_inertia"] = structure(c.h1_inertia);
    out["h1_total"] = structure(c.h1_total);
    return out;
}

json inertial_classes_to_json(const std::vector<moduli::InertialClass>& classes,
                              const fingrp::FiniteField& f) {
    json arr = json::array();
    for (const auto& cls : classes) {
        json jc;
        jc["rep"] = fqmatrix_to_json(cls.rep, f);
        jc["beta_label"] = cls.beta_label;
        jc["count"] = cls.count;
        arr.push_back(jc);
    }
    json out;
    out["classes"] = arr;
    return out;
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

}  // namespace langparams::io
