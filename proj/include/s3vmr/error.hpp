#pragma once

#include <stdexcept>
#include <string>

namespace s3vmr {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace s3vmr
