// bench_kernels.cpp -- serial reference vs OpenMP kernels on the enumeration
// and chi-oracle hot paths.
#include "langparams/fingroup.hpp"
#include "langparams/moduli.hpp"
#include "langparams/rootdata.hpp"

#include <benchmark/benchmark.h>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace langparams;

struct EnumFixture {
    fingrp::GroupSpecFin spec;
    moduli::SemidirectData sd;
    std::vector<fingrp::FqMatrix> group;

    EnumFixture(long ell, long q)
        : spec(fingrp::GroupKind::GL, 2, fingrp::FiniteField(ell, 1)) {
        group = fingrp::enumerate_group(spec);
        sd.q = q;
        sd.verify_relation(spec.field, group);
    }
};

void bm_enumerate_serial(benchmark::State& state) {
    EnumFixture fx(7, 2);
    for (auto _ : state) {
        auto pts = moduli::enumerate_z1_serial(fx.spec, fx.sd, fx.group);
        benchmark::DoNotOptimize(pts);
    }
}
BENCHMARK(bm_enumerate_serial)->Unit(benchmark::kMillisecond);

void bm_enumerate_parallel(benchmark::State& state) {
    EnumFixture fx(7, 2);
    for (auto _ : state) {
        auto pts = moduli::enumerate_z1(fx.spec, fx.sd, fx.group);
        benchmark::DoNotOptimize(pts);
    }
}
BENCHMARK(bm_enumerate_parallel)->Unit(benchmark::kMillisecond);

void bm_chi_oracle_f4(benchmark::State& state) {
    auto d = rootdata::build_root_datum("F4");
    auto beta = rootdata::trivial_automorphism(d);
    for (auto _ : state) {
        auto chi = rootdata::chi_twisted(d, beta, rootdata::ChiMethod::Oracle);
        benchmark::DoNotOptimize(chi);
    }
}
BENCHMARK(bm_chi_oracle_f4)->Unit(benchmark::kMillisecond);

void bm_analyze_points(benchmark::State& state) {
    EnumFixture fx(5, 2);
    auto points = moduli::enumerate_z1(fx.spec, fx.sd, fx.group);
    dualgroup::ArithContext ctx;
    ctx.p = 2;
    ctx.q = 2;
    auto chi = moduli::dual_chi(fx.spec);
    for (auto _ : state) {
        auto analyses = moduli::analyze_points(fx.spec, fx.sd, points, ctx, chi);
        benchmark::DoNotOptimize(analyses);
    }
}
BENCHMARK(bm_analyze_points)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
