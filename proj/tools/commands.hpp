#pragma once

#include "scenarios.hpp"

#include <string>
#include <vector>

namespace gmt::cli {

/// Input files and parameters of the file-driven commands.
struct FileInputs
{
    std::string complex;
    std::string chain;
    std::string map;
    std::string field;
    std::string body;
    std::string motion;
    std::string table;
    std::string target;
    std::string voxels;
    std::string form;
    std::vector<std::string> forms;
    std::vector<std::string> refinement;
    std::vector<double> point;
    double radius = 0.0;
    double lip = 0.0;
};

/// Commands that read input files.
const std::vector<ScenarioInfo>& file_commands();
bool is_file_command(const std::string& name);
/// Whether the inputs select the file-driven variant of a command that is
/// also a built-in scenario.
bool wants_files(const std::string& name, const FileInputs& in);

Json run_file_command(const std::string& name, const FileInputs& in, const Options& o);

} // namespace gmt::cli
