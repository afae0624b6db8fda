#pragma once

// Self-describing output files. CSV: '#'-prefixed "key=value" header lines,
// one column-name line, comma-separated rows with 17 significant digits.
// JSON: {"meta": {...}, "data": ...}.

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "csqs/csqs_state.hpp"
#include "csqs/measures.hpp"
#include "csqs/phase_space.hpp"

namespace csqs::io {

using Meta = nlohmann::ordered_json;

/// %.17g, with "nan"/"inf"/"-inf" for non-finite values.
std::string format_double(double v);

/// Quotes the field when it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);

Meta state_meta(const NormalizedCsqs& state);
Meta grid_meta(const PhaseGrid& grid);

/// Writes meta (flattened with '.' separators) plus grid and integral keys, then x,y,W rows.
void write_field_csv(std::ostream& os, const WignerField& field, const Meta& meta);
void write_field_json(std::ostream& os, const WignerField& field, const Meta& meta);

struct LoadedField {
  Meta meta;
  WignerField field;
};

/// Throws InvalidParameters on malformed input.
LoadedField read_field_csv(std::istream& is);
LoadedField read_field_json(std::istream& is);

nlohmann::ordered_json report_to_json(const MeasureReport& report);
void write_reports_csv(std::ostream& os, std::span<const MeasureReport> reports, const Meta& meta);
void write_reports_json(std::ostream& os, std::span<const MeasureReport> reports, const Meta& meta);

/// '#'-prefixed header lines for an arbitrary meta object.
void write_csv_meta(std::ostream& os, const Meta& meta);

}  // namespace csqs::io
