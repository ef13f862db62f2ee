#pragma once

#include <iosfwd>
#include <string>

#include "ccym/field.hpp"

namespace ccym {

enum class Encoding { Text, Binary };

// Field blob: one JSON header line, a newline, then the flat value array.
// Layout and header keys are described in docs/field_format.md.
void write_field(std::ostream& os, const GridField& f, Encoding enc = Encoding::Text);
GridField read_field(std::istream& is);

void save_field(const std::string& path, const GridField& f, Encoding enc = Encoding::Text);
GridField load_field(const std::string& path);

}  // namespace ccym
