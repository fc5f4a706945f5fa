// serialize.hpp -- canonical JSON and CSV forms for reports. JSON objects use
// lexicographically sorted keys, so identical inputs serialize to identical
// bytes; exact integers travel as decimal strings.
#pragma once

#include "langparams/dualgroup.hpp"
#include "langparams/fingroup.hpp"
#include "langparams/intmatrix.hpp"
#include "langparams/intpoly.hpp"
#include "langparams/kostant.hpp"
#include "langparams/moduli.hpp"

#include <json.hpp>

#include <string>

namespace langparams::io {

using nlohmann::json;

json poly_to_json(const exactalg::IntPoly& p);
exactalg::IntPoly poly_from_json(const json& j);

json matrix_to_json(const exactalg::IntMatrix& m);
exactalg::IntMatrix matrix_from_json(const json& j);

json fqmatrix_to_json(const fingrp::FqMatrix& m, const fingrp::FiniteField& f);
fingrp::FqMatrix fqmatrix_from_json(const json& j);

json prime_set_to_json(const std::set<exactalg::Int>& s);

json banal_report_to_json(const dualgroup::BanalReport& rep);

json lgroup_spec_to_json(const dualgroup::LGroupSpec& spec);
// Factors are rebuilt from their type labels and twist orders.
dualgroup::LGroupSpec lgroup_spec_from_json(const json& j);

json point_list_to_json(const fingrp::GroupSpecFin& spec, const moduli::SemidirectData& sd,
                        const std::vector<moduli::PointAnalysis>& points);

json cocycle_structure_to_json(const dualgroup::CocycleGroupStructure& s);

json kostant_report_to_json(const std::string& algebra, int beta_order, const exactalg::Rat& t,
                            const kostant::KostantDetReport& rep);

json cohomology_to_json(const moduli::CyclicCohomology& c);

json inertial_classes_to_json(const std::vector<moduli::InertialClass>& classes,
                              const fingrp::FiniteField& f);

// Canonical text: sorted keys, fixed two-space indentation, trailing newline.
std::string dump_canonical(const json& j);

}  // namespace langparams::io
