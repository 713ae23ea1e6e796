// Serial reference vs OpenMP batch runner on a fixed synthetic corpus.

#include <random>

#include <benchmark/benchmark.h>

#include "elian/harness.hpp"

namespace {

elian::Grid make_map(std::uint64_t seed, int size, double density)
{
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution blocked(density);
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(size) * size);
    for (auto& c : cells) c = blocked(rng) ? 1 : 0;
    return elian::Grid(size, size, std::move(cells));
}

struct Corpus {
    elian::Grid grid = make_map(7, 96, 0.08);
    std::vector<elian::ScenarioSet> sets;
    std::vector<elian::NamedConfig> configs;

    Corpus()
    {
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<int> coord(0, grid.width() - 1);
        elian::ScenarioSet set;
        set.map_id = "synthetic";
        set.map_width = set.map_height = grid.width();
        while (set.instances.size() < 24) {
            elian::Instance inst;
            inst.map_id = set.map_id;
            inst.start = {coord(rng), coord(rng)};
            inst.goal = {coord(rng), coord(rng)};
            inst.index = set.instances.size();
            if (!elian::is_traversable(grid, inst.start) || !elian::is_traversable(grid, inst.goal)) continue;
            if (elian::euclid(inst.start, inst.goal) < 40) continue;
            set.instances.push_back(inst);
        }
        sets.push_back(std::move(set));
        const double alphas[] = {25.0};
        configs = elian::default_configs(alphas, 2.0, 5.0);
    }

    elian::MapResolver resolver() const
    {
        return [this](const std::string&) { return grid; };
    }
};

const Corpus& corpus()
{
    static const Corpus c;
    return c;
}

void BM_BatchSerial(benchmark::State& state)
{
    const Corpus& c = corpus();
    for (auto _ : state) {
        auto result = elian::run_batch_serial(c.sets, c.resolver(), c.configs);
        benchmark::DoNotOptimize(result.records.data());
    }
}
BENCHMARK(BM_BatchSerial)->Unit(benchmark::kMillisecond);

void BM_BatchOpenMP(benchmark::State& state)
{
    const Corpus& c = corpus();
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto result = elian::run_batch(c.sets, c.resolver(), c.configs, jobs);
        benchmark::DoNotOptimize(result.records.data());
    }
}
BENCHMARK(BM_BatchOpenMP)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
