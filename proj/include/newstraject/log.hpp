#pragma once

namespace newstraject::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

// Threshold comes from NEWSTRAJECT_LOG (error|warn|info|debug), default warn.
Level threshold();
void set_threshold(Level level);

void write(Level level, const char* fmt, ...) __attribute__((format(printf, 2, 3)));

}  // namespace newstraject::log

#define NT_ERROR(...) ::newstraject::log::write(::newstraject::log::Level::error, __VA_ARGS__)
#define NT_WARN(...) ::newstraject::log::write(::newstraject::log::Level::warn, __VA_ARGS__)
#define NT_INFO(...) ::newstraject::log::write(::newstraject::log::Level::info, __VA_ARGS__)
#define NT_DEBUG(...) ::newstraject::log::write(::newstraject::log::Level::debug, __VA_ARGS__)
