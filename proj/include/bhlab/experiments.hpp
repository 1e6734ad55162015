#pragma once

#include <map>
#include <string>
#include <vector>

#include "bhlab/io.hpp"

namespace bhlab {

// One output file produced by an experiment (CSV table, plot-ready column
// file, or JSON metadata); the caller decides where to put it on disk.
struct run_artifact {
    std::string name;
    std::string content;
};

struct run_result {
    std::string experiment;
    std::string text;                      // human-readable summary
    std::map<std::string, double> scalars; // machine-readable outcomes
    std::vector<run_artifact> artifacts;
};

// Dispatch on cfg["experiment"]: simulate | sweep | crosscheck | convergence
// | constants | transform-demo.  Appends a metadata.json artifact echoing the
// configuration, the scalar outcomes and the wall-clock time.  Config keys
// are documented in the README.
run_result run_experiment(const kv_map& cfg);

run_result run_simulate(const kv_map& cfg);
run_result run_sweep(const kv_map& cfg);
run_result run_crosscheck(const kv_map& cfg);
run_result run_convergence(const kv_map& cfg);
run_result run_constants(const kv_map& cfg);
run_result run_transform_demo(const kv_map& cfg);

}  // namespace bhlab
