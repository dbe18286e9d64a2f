#pragma once
#include <string>

namespace escdim {

// Writes to "<path>.tmp" then renames, so readers never observe a torn file.
void write_text_atomic(const std::string& path, const std::string& bytes);

std::string read_text(const std::string& path);

} // namespace escdim
