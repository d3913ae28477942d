#pragma once

#include <charconv>
#include <stdexcept>
#include <string>

namespace scenecrf {

// Shortest exact decimal form of a double; locale-independent, so
// emitted files and printed tables are reproducible byte-for-byte.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

}  // namespace scenecrf
