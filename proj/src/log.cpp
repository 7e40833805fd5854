#include "ridgelab/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace ridgelab {
namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& handler() {
  static WarningHandler h = [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; };
  return h;
}

std::atomic<std::size_t> g_count{0};

}  // namespace

void warn(const std::string& message) {
  ++g_count;
  std::lock_guard lock(handler_mutex());
  if (handler()) handler()(message);
}

WarningHandler set_warning_handler(WarningHandler h) {
  std::lock_guard lock(handler_mutex());
  WarningHandler previous = std::move(handler());
  handler() = std::move(h);
  return previous;
}

std::size_t warning_count() { return g_count.load(); }

}  // namespace ridgelab
