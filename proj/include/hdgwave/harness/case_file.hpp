#pragma once

#include "hdgwave/common.hpp"
#include "hdgwave/elastodyn/material.hpp"
#include "hdgwave/hdg/hdg_system.hpp"
#include "hdgwave/maxwell/glm_model.hpp"

#include <string>
#include <vector>

namespace hdgwave::harness {

enum class Physics { linear_elastodyn, svk_elastodyn, maxwell_glm, maxwell_uncorrected };

std::string to_string(Physics p);
Physics parse_physics(const std::string& name);
bool is_maxwell(Physics p);

/// Time series written per refinement level.
enum class SeriesKind { energy, divergence };

std::string to_string(SeriesKind s);

struct CaseFile {
    std::string name = "case";
    Physics physics = Physics::linear_elastodyn;
    /// start from the exact solution but drop all sources and boundary data;
    /// no errors are measured, only the time series are meaningful
    bool homogeneous = false;

    int degree = 1;
    TraceVariant trace = TraceVariant::hdg;
    std::vector<double> refinements;
    int quadrature = -1;

    std::string scheme = "dirk33";
    double dt = 0.0;
    double final_time = 1.0;
    int predictor = 2;

    ElasticMaterial material;
    Stabilization stabilization;
    double amplitude = 0.4;
    double thickness = 0.01;

    EmMaterial em;
    GlmParameters glm;
    double omega = 1.0;
    double distortion = 0.0;

    NewtonOptions newton;
    double gmres_tolerance = 1e-10;
    int gmres_restart = 200;
    int gmres_max_iterations = 2000;
    krylov::RasOptions ras;
    bool share_operators = true;
    int threads = 1;

    std::string output_directory = ".";
    std::vector<SeriesKind> series;
    int sample_every = 1;

    /// Throws ConfigError on the first inconsistent parameter.
    void validate() const;
    HdgOptions hdg_options() const;
    int num_steps() const;
};

struct Entry {
    std::string key; // "section.key"
    std::string value;
    int line = 0;
};

/// Reads the flat `[section]` / `key = value` format in file order; `#` starts
/// a comment. Malformed lines and duplicate keys throw ConfigError naming the
/// line. Keys are not interpreted.
std::vector<Entry> read_entries(const std::string& text);
/// whole file; throws ConfigError if unreadable
std::string read_text(const std::string& path);

/// Parses a case file. Unknown sections or keys, duplicates and malformed
/// values throw ConfigError naming the line. The result is validated.
CaseFile parse_case(const std::string& text);
CaseFile load_case(const std::string& path);

/// Applies `section.key=value` on top of a parsed case and revalidates.
void apply_override(CaseFile& c, const std::string& assignment);

/// Names of all accepted `section.key` entries.
std::vector<std::string> case_keys();

}
