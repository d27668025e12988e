#include <benchmark/benchmark.h>

#include "tuav/catenary.hpp"
#include "tuav/config.hpp"
#include "tuav/sim_engine.hpp"
#include "tuav/uav_dynamics.hpp"

namespace {

void BM_FitCatenary(benchmark::State& state) {
    const Eigen::Vector3d anchor = Eigen::Vector3d::Zero();
    const Eigen::Vector3d end(3.0, 4.0, 5.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tuav::fit_catenary(anchor, end, 7.5, 100.0));
    }
}
BENCHMARK(BM_FitCatenary);

void BM_FullDerivative(benchmark::State& state) {
    tuav::FullState s;
    s.uav.z = 5.0;
    s.uav.phi = 0.1;
    s.uav.theta = -0.05;
    s.winder.theta = 50.0;
    tuav::ControlInputs u;
    u.thrust = 20.0;
    const tuav::UavParams p;
    const tuav::WinderParams w;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tuav::full_derivative(s, u, {}, p, w));
    }
}
BENCHMARK(BM_FullDerivative);

void BM_ClosedLoopOneSecond(benchmark::State& state) {
    tuav::SimConfig config = tuav::builtin_scenario("setpoint");
    config.duration = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tuav::run_closed_loop(config));
    }
}
BENCHMARK(BM_ClosedLoopOneSecond)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
