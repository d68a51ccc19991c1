#pragma once

#include "eroiplan/gsa.hpp"
#include "eroiplan/model.hpp"
#include "eroiplan/pce.hpp"
#include "eroiplan/scenario.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace eroiplan {

/// Emissions cross the I/O boundary in MtCO2-eq/y; tCO2-eq/y inside.
inline constexpr double kTonnesPerMt = 1e6;

struct LoadIssue {
    std::string file;
    int line = 0; // 0 when not tied to a line
    std::string message;
};

class LoadError : public std::runtime_error {
public:
    explicit LoadError(std::vector<LoadIssue> issues);
    const std::vector<LoadIssue>& issues() const { return issues_; }

private:
    std::vector<LoadIssue> issues_;
};

struct LoadedDataset {
    ValidatedModel model;
    std::vector<UncertainParameter> uncertain;
};

/// Reads a dataset bundle directory (resources.csv, technologies.csv,
/// conversion.csv, storage.csv, demands.csv, profiles.csv, cpt.csv,
/// typical_days.csv, optional uncertain.csv, meta.toml) and returns the
/// validated model. Throws LoadError with an exhaustive issue list (file,
/// line) covering both parse and validation problems.
LoadedDataset load(const std::filesystem::path& dir);

/// Writes a model (plus optional uncertain-parameter list) back as a bundle.
/// save(load(dir)) reproduces a semantically identical model.
void save(const EnergySystemModel& model, const std::vector<UncertainParameter>& uncertain,
          const std::filesystem::path& dir);

/// Write-temp-then-rename so readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string report_json(const ScenarioResult& result);
std::string sobol_report_json(const SobolReport& report);

void write_frontier_csv(const SweepResult& sweep, std::ostream& os);
void write_screening_csv(const ScreeningResult& screening, std::ostream& os);
void write_sobol_csv(const SobolReport& report, std::ostream& os);
void write_histogram_csv(const pce::Histogram& histogram, std::ostream& os);

/// Plot-ready tables from a previously written report JSON:
/// einv.csv, gwp.csv, fec.csv, mix.csv under out_dir.
void render_report_tables(const std::string& report_json_text,
                          const std::filesystem::path& out_dir);

/// Mix categories emitted as frontier-table columns, in order.
const std::vector<std::string>& mix_categories();

} // namespace eroiplan
