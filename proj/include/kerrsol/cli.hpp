#ifndef KERRSOL_CLI_HPP
#define KERRSOL_CLI_HPP

#include <optional>
#include <string>
#include <vector>

#include "kerrsol/grid.hpp"

namespace kerrsol {

// Exit codes: 0 success, 1 configuration/usage error, 2 numerical abort,
// 3 partial sweep failure.
int cli_main(int argc, char** argv);

std::vector<double> parse_gamma_list(const std::string& text);

struct WindowSelection {
  SpectralWindow w1;
  std::optional<SpectralWindow> w2;
};

/// "lo,hi" or "lo,hi,lo2,hi2" entries separated by ';'. Empty text gives
/// an empty list.
std::vector<WindowSelection> parse_windows_spec(const std::string& text);

}  // namespace kerrsol

#endif
