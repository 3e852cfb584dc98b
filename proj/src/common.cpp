#include "figrl/common.hpp"

#include <iostream>

namespace figrl {

void warn(const std::string& msg) { std::cerr << "figrl: warning: " << msg << "\n"; }

} // namespace figrl
