#include <gtest/gtest.h>

#include "tsfrac/errors.hpp"
#include "tsfrac/io.hpp"

using namespace tsfrac;
using io::json;

TEST(Io, TimescaleRoundTrip) {
  const TimeScale ts({Point{0.0}, Interval{0.5, 1.0}, Point{3.0}});
  const auto back = io::timescale_from_json(io::timescale_to_json(ts));
  EXPECT_EQ(back.describe(), ts.describe());
}

TEST(Io, TimescaleRejectsBadDocuments) {
  EXPECT_THROW(io::timescale_from_json(json::parse(R"({"components": []})")), ValidationError);
  EXPECT_THROW(io::timescale_from_json(json::parse(R"({"components": [{"interval": [0]}]})")), ValidationError);
  EXPECT_THROW(io::timescale_from_json(json::parse(R"({"components": [{"dot": 1}]})")), ValidationError);
  EXPECT_THROW(io::timescale_from_json(json::parse(R"({"components": [{"point": 0}], "x": 1})")), ValidationError);
}

TEST(Io, FormRoundTrip) {
  const FormSpec spec{"power", {{"p", 1.5}}};
  const auto back = io::form_from_json(io::form_to_json(spec), "psi");
  EXPECT_EQ(back.form, "power");
  EXPECT_EQ(back.params.at("p"), 1.5);
  EXPECT_THROW(io::form_from_json(json::parse(R"({"form": "power", "params": {"p": "x"}})"), "psi"), ValidationError);
}

TEST(Io, ErrorsNameTheField) {
  try {
    io::get_number(json::parse(R"({"alpha": "half"})"), "alpha", "input");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("input.alpha"), std::string::npos);
  }
}
