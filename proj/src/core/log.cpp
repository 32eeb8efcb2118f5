#include "memsig/log.hpp"

#include <iostream>
#include <mutex>

namespace memsig {

namespace {

std::mutex sink_mutex;

WarningSink& sink() {
  static WarningSink s = [](std::string_view msg) { std::clog << "warning: " << msg << '\n'; };
  return s;
}

}  // namespace

void warn(std::string_view message) {
  std::lock_guard lock(sink_mutex);
  if (sink()) sink()(message);
}

WarningSink set_warning_sink(WarningSink s) {
  std::lock_guard lock(sink_mutex);
  WarningSink previous = std::move(sink());
  sink() = std::move(s);
  return previous;
}

}  // namespace memsig
