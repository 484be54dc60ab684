#pragma once

#include <string>

namespace tpbench {

enum class Method { Io, Cot, CotSc, Bag, Tot, Tp };

std::string method_name(Method method);
Method method_from_name(const std::string& name);

}  // namespace tpbench
