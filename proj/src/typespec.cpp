#include "langparams/typespec.hpp"

#include "langparams/errors.hpp"

namespace langparams::typespec {

std::vector<ParsedComponent> parse_components(const std::string& spec) {
    if (spec.empty()) throw UnsupportedTypeError(spec);
    std::vector<ParsedComponent> out;
    std::string cur;
    auto flush = [&]() {
        if (cur.empty()) throw UnsupportedTypeError(spec);
        ParsedComponent c;
        auto caret = cur.find('^');
        if (caret == std::string::npos) {
            c.label = cur;
        } else {
            c.label = cur.substr(0, caret);
            std::string ord = cur.substr(caret + 1);
            if (ord != "2" && ord != "3") throw UnsupportedTypeError(cur);
            c.twist_order = std::stoi(ord);
        }
        out.push_back(c);
        cur.clear();
    };
    for (char ch : spec) {
        if (ch == 'x') {
            flush();
        } else {
            cur.push_back(ch);
        }
    }
    flush();
    return out;
}

TypeWithTwist build_type(const std::string& spec) {
    auto comps = parse_components(spec);
    std::vector<rootdata::BasedRootDatum> data;
    std::vector<rootdata::DiagramAutomorphism> twists;
    for (const auto& c : comps) {
        rootdata::BasedRootDatum d = rootdata::build_root_datum_for_twist(c.label, c.twist_order);
        rootdata::DiagramAutomorphism b = c.twist_order == 1
                                              ? rootdata::trivial_automorphism(d)
                                              : rootdata::standard_twist(d, c.twist_order);
        data.push_back(std::move(d));
        twists.push_back(std::move(b));
    }
    // Rebuild as one product so lattice offsets line up, keeping each
    // component's realization.
    TypeWithTwist out;
    if (comps.size() == 1) {
        out.datum = data[0];
        out.beta = twists[0];
        return out;
    }
    std::vector<std::pair<std::string, int>> parts;
    for (const auto& c : comps) parts.emplace_back(c.label, c.twist_order);
    out.datum = rootdata::build_product(parts);
    out.beta = rootdata::product_twist(out.datum, twists);
    return out;
}

dualgroup::LGroupSpec build_lgroup_spec(const std::string& spec,
                                        const dualgroup::ArithContext& ctx) {
    auto comps = parse_components(spec);
    dualgroup::LGroupSpec out;
    out.context = ctx;
    std::vector<int> torus_signs;  // +1 identity, -1 inversion, per torus coordinate
    for (const auto& c : comps) {
        if (c.label[0] == 'T') {
            int r = std::stoi(c.label.substr(1));
            if (c.twist_order == 3) throw UnsupportedTypeError(c.label + "^3");
            if (c.twist_order == 2 && r != 1)
                throw UnsupportedTypeError(c.label + "^2 (inversion is only defined for T1)");
            for (int i = 0; i < r; ++i) torus_signs.push_back(c.twist_order == 2 ? -1 : 1);
            continue;
        }
        dualgroup::LFactor fac;
        fac.datum = rootdata::build_root_datum_for_twist(c.label, c.twist_order);
        fac.twist = c.twist_order == 1 ? rootdata::trivial_automorphism(fac.datum)
                                       : rootdata::standard_twist(fac.datum, c.twist_order);
        fac.f = 1;
        out.factors.push_back(std::move(fac));
    }
    out.abelian_rank = static_cast<long>(torus_signs.size());
    if (out.abelian_rank > 0) {
        out.abelian_fr = exactalg::IntMatrix(static_cast<int>(out.abelian_rank),
                                             static_cast<int>(out.abelian_rank));
        for (size_t i = 0; i < torus_signs.size(); ++i)
            out.abelian_fr.at(static_cast<int>(i), static_cast<int>(i)) = torus_signs[i];
    }
    return out;
}

}  // namespace langparams::typespec
