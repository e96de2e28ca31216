#pragma once

#include <string>

namespace cliquescope {

// Integer-valued numbers print without a decimal point ("523"); everything
// else uses up to 6 significant digits ("31.5", "0.333333").
std::string format_number(double value);

// Fixed notation with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

}  // namespace cliquescope
