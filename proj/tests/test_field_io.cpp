#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include "csqs/errors.hpp"
#include "csqs/field_io.hpp"

using namespace csqs;

namespace {

WignerField small_field() {
  const NormalizedCsqs s = normalize(StateParams({0.7, -0.3}, 0.6, 0.8));
  return wigner_field(s, PhaseGrid::centered({0.7, -0.3}, 4.0, 41), 1);
}

}  // namespace

TEST_CASE("doubles print with 17 significant digits", "[io]") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(io::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  const double x = 1.0 / 3.0;
  CHECK(std::stod(io::format_double(x)) == x);
}

TEST_CASE("CSV escaping", "[io]") {
  CHECK(io::csv_escape("plain") == "plain");
  CHECK(io::csv_escape("a,b") == "\"a,b\"");
  CHECK(io::csv_escape("say \"x\"") == "\"say \"\"x\"\"\"");
}

TEST_CASE("CSV field round trip is exact", "[io][property]") {
  const WignerField f = small_field();
  io::Meta meta;
  meta["command"] = "wigner";
  meta["state"] = {{"alpha_re", 0.7}, {"t", 0.6}};
  std::stringstream ss;
  io::write_field_csv(ss, f, meta);
  const std::string text = ss.str();
  CHECK(text.rfind("# ", 0) == 0);
  CHECK(text.find("# state.alpha_re=0.69999999999999996\n") != std::string::npos);
  CHECK(text.find("\nx,y,W\n") != std::string::npos);

  const io::LoadedField back = io::read_field_csv(ss);
  CHECK(back.field.values == f.values);
  CHECK(back.field.total_integral == f.total_integral);
  CHECK(back.meta["state"]["alpha_re"].get<double>() == 0.7);
  CHECK(back.meta["command"].get<std::string>() == "wigner");
  CHECK(back.meta["grid"]["nx"].get<int>() == 41);
}

TEST_CASE("JSON field round trip is exact", "[io][property]") {
  const WignerField f = small_field();
  io::Meta meta;
  meta["command"] = "wigner";
  std::stringstream ss;
  io::write_field_json(ss, f, meta);
  const auto doc = nlohmann::json::parse(ss.str());
  CHECK(doc.contains("meta"));
  CHECK(doc["data"]["W"].size() == 41);
  std::stringstream again(ss.str());
  const io::LoadedField back = io::read_field_json(again);
  CHECK(back.field.values == f.values);
  CHECK(back.meta["negativity_volume"].get<double>() == f.negative_integral);
}

TEST_CASE("malformed field files are rejected", "[io][errors]") {
  std::stringstream no_header("# a=1\n1,2,3\n");
  CHECK_THROWS_AS(io::read_field_csv(no_header), InvalidParameters);
  std::stringstream no_grid("# a=1\nx,y,W\n");
  CHECK_THROWS_AS(io::read_field_csv(no_grid), InvalidParameters);

  const WignerField f = small_field();
  std::stringstream full;
  io::write_field_csv(full, f, io::Meta::object());
  std::string truncated = full.str();
  truncated.resize(truncated.size() - 200);
  truncated = truncated.substr(0, truncated.rfind('\n') + 1);
  std::stringstream cut(truncated);
  CHECK_THROWS_AS(io::read_field_csv(cut), InvalidParameters);

  std::stringstream bad_json("{not json");
  CHECK_THROWS_AS(io::read_field_json(bad_json), InvalidParameters);
}

TEST_CASE("reports serialize absent values as null or empty", "[io]") {
  const std::vector<MeasureReport> reports{MeasureReport::make(MeasureName::WLN, std::nullopt, 0.25, "note, with comma"),
                                           MeasureReport::make(MeasureName::LE, 0.1, 0.1, "")};
  const auto j = io::report_to_json(reports[0]);
  CHECK(j["closed_value"].is_null());
  CHECK(j["delta"].is_null());
  CHECK(j["oracle_value"].get<double>() == 0.25);

  std::stringstream csv;
  io::write_reports_csv(csv, reports, io::Meta{{"command", "measures"}});
  const std::string text = csv.str();
  CHECK(text.find("name,closed_value,oracle_value,delta,method_notes\n") != std::string::npos);
  CHECK(text.find("WLN,,0.25,,\"note, with comma\"\n") != std::string::npos);
  CHECK(text.find("LE,0.10000000000000001,0.10000000000000001,0,\n") != std::string::npos);

  std::stringstream js;
  io::write_reports_json(js, reports, io::Meta{{"command", "measures"}});
  const auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["data"].size() == 2);
  CHECK(doc["meta"]["command"] == "measures");
}
