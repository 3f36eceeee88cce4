#pragma once

#include <optional>
#include <string>
#include <vector>

namespace folmod {

// Input documents shipped with the build (data/examples), in file-name order.
struct BundledExample {
  std::string name;  // "example0" ...
  std::string text;  // JSON document
};
const std::vector<BundledExample>& bundled_examples();
std::optional<BundledExample> bundled_example(const std::string& name);

}  // namespace folmod
