#ifndef OPTOENT_CONFIG_IO_HPP
#define OPTOENT_CONFIG_IO_HPP

#include "optoent/params.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace optoent
{

// Flat `key = value unit` text, one entry per line, `#` starts a comment.
//
//   mirror1.mass   = 23 mg
//   mirror1.omega  = 1.0e6 rad_s
//   cavity.power   = 1.0 W
//   temperature    = 2.0 K
//
// Every key is required, unknown keys and missing units are rejected.
// Rates accept rad_s, krad_s, Mrad_s (angular) and Hz, kHz, MHz (cyclic,
// multiplied by 2 pi on load). Values are stored in SI / rad/s.
SystemConfig parse_config(std::istream& in, const std::string& source = "<config>",
                          std::vector<std::string>* warnings = nullptr);

SystemConfig load_config(const std::string& path, std::vector<std::string>* warnings = nullptr);

// Inverse of parse_config, 17 significant digits, canonical units.
std::string format_config(const SystemConfig& config);

} // namespace optoent

#endif
