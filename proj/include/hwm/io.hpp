#ifndef HWM_IO_HPP
#define HWM_IO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hwm/dynamics.hpp"
#include "hwm/init.hpp"
#include "hwm/oracle_pde.hpp"

namespace hwm {

using json = nlohmann::json;

// Scenario configuration (JSON): kernel + initial-data source + evolution
// window + output grid. Complex numbers are [re, im] pairs.
struct Scenario {
    KernelKind kernel;

    enum class SourceType { Iterative, TravelingWave, Catalog, Explicit };
    SourceType source = SourceType::Catalog;

    // Iterative
    SolitonSpec spec;
    IterationOptions iteration;
    // TravelingWave
    std::vector<cx> tw_poles;
    double tw_theta = 0.0;
    int tw_chirality = +1;
    // Catalog
    CatalogId catalog_id = CatalogId::TwoSoliton;
    // Explicit
    SpinPoleData explicit_data;

    EvolveOptions evolve;

    // Output grid and sampling
    double grid_min = -20.0;
    double grid_max = 20.0;
    int grid_points = 512;
    std::vector<double> field_times; // times at which field CSVs are written
    bool write_field_csv = true;
};

cx parse_complex(const json& j, const std::string& where);
json complex_to_json(cx z);
json vec3_to_json(const ComplexVec3& v);
ComplexVec3 parse_vec3(const json& j, const std::string& where);

Scenario parse_scenario(const json& j);
Scenario load_scenario(const std::filesystem::path& path);

json to_json(const ConstraintReport& rep);
json to_json(const SpinPoleData& data);
SpinPoleData spin_pole_from_json(const json& j);

// Builds the initial data for a scenario; returns the data plus a run
// report fragment (iteration counts, warnings).
struct SourceResult {
    SpinPoleData data;
    json report;
};
SourceResult build_source(const Scenario& sc);

std::string format_double(double v); // 17 significant digits

// Per-time field CSVs (x, m1, m2, m3, eps), poles.csv, report.json.
void export_series(const Trajectory& traj, const KernelKind& kind,
                   const Scenario& sc, const std::filesystem::path& out_dir,
                   json run_report);

void write_grid_csv(const GridField& g, const std::filesystem::path& path);
void write_grid_binary(const GridField& g, const std::filesystem::path& path);

} // namespace hwm

#endif
