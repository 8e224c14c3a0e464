#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include <vibwit/errors.hpp>
#include <vibwit/io.hpp>

using namespace vibwit;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / ("vibwit_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  std::filesystem::create_directories(dir);
  return dir;
}

Table sample_table() {
  Table t;
  t.metadata["model"] = "coherent-dimer";
  t.metadata["sigma_pump_fs"] = "2";
  t.add("T_fs", {0.0, 1.5, 3.0});
  t.add("signal", {1.0 / 3.0, -2.5e-17, 6.02214076e23});
  return t;
}

void expect_equal(const Table& a, const Table& b) {
  EXPECT_EQ(a.metadata, b.metadata);
  EXPECT_EQ(a.names, b.names);
  ASSERT_EQ(a.columns.size(), b.columns.size());
  for (std::size_t c = 0; c < a.columns.size(); ++c) EXPECT_EQ(a.columns[c], b.columns[c]);
}

}  // namespace

TEST(Table, CsvAndJsonRoundTripsAreExact) {
  const Table t = sample_table();
  expect_equal(table_from_csv(table_to_csv(t)), t);
  expect_equal(table_from_json(table_to_json(t)), t);
  const auto dir = scratch_dir();
  for (auto format : {OutputFormat::Csv, OutputFormat::Json}) {
    const auto path = (dir / ("table" + extension(format))).string();
    write_table(path, t, format);
    expect_equal(read_table(path), t);
  }
  std::filesystem::remove_all(dir);
}

TEST(Table, ValidationAndLookupErrors) {
  Table t = sample_table();
  EXPECT_THROW(t.column("missing"), IoError);
  EXPECT_THROW(t.add("short", {1.0}), ConfigError);
  EXPECT_THROW(t.add("signal", {1.0, 2.0, 3.0}), ConfigError);
  EXPECT_THROW(parse_format("xml"), ConfigError);
  EXPECT_EQ(parse_format("json"), OutputFormat::Json);
  EXPECT_THROW(table_from_csv("a,b\n1,2\n3\n"), IoError);
  EXPECT_THROW(table_from_csv("a,b\n1,abc\n"), IoError);
}

TEST(Table, MissingFileIsIoError) {
  EXPECT_THROW(read_table("/nonexistent/dir/table.csv"), IoError);
  EXPECT_THROW(write_text("/proc/vibwit/not_writable.txt", "x"), IoError);
  EXPECT_THROW(read_json("/nonexistent/manifest.json"), IoError);
}

TEST(Trace, RoundTripThroughTable) {
  SignalTrace s;
  s.axis = {0.0, 1.0, 2.0};
  s.real = {0.1, 0.2, 0.3};
  s.imag = {-1.0, 0.0, 1.0};
  s.metadata["units"] = "arb";
  const SignalTrace back = trace_from_table(table_from_csv(table_to_csv(trace_table(s))));
  EXPECT_EQ(back.axis, s.axis);
  EXPECT_EQ(back.real, s.real);
  EXPECT_EQ(back.imag, s.imag);
  EXPECT_EQ(back.metadata.at("units"), "arb");
  EXPECT_THROW(trace_from_table(trace_table(s), "nope"), IoError);
}

TEST(Chi, LongFormatRoundTrip) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2, 2);
  ProcessMatrix chi({0.0, 10.0}, 2, ElectronicFrame::Site, u);
  for (std::size_t t = 0; t < 2; ++t)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int q = 0; q < 2; ++q)
          for (int p = 0; p < 2; ++p) chi.at(t, i, j, q, p) = {0.1 * i + 0.01 * j + t, 0.2 * q - 0.03 * p};
  const Table table = chi_table(chi);
  EXPECT_EQ(table.rows(), 2u * 16u);
  const ProcessMatrix back = chi_from_table(table_from_json(table_to_json(table)));
  EXPECT_EQ(back.times(), chi.times());
  EXPECT_EQ(back.frame(), ElectronicFrame::Site);
  for (std::size_t t = 0; t < 2; ++t)
    for (int i = 0; i < 2; ++i)
      for (int p = 0; p < 2; ++p) EXPECT_EQ(back.at(t, i, 1, 0, p), chi.at(t, i, 1, 0, p));
}

TEST(Report, JsonCarriesVerdictAndFits) {
  WitnessReport r;
  r.positive = true;
  r.dc = 2.0;
  FrequencyFit f;
  f.frequency = 223.0;
  f.sigmas = {1, 2, 3};
  f.amplitudes = {0.3, 0.2, 0.1};
  f.fit.intercept = 0.4;
  f.significant = true;
  r.fits.push_back(f);
  const nlohmann::json j = report_to_json(r);
  EXPECT_EQ(j.at("verdict"), "positive");
  EXPECT_EQ(j.at("peaks").size(), 1u);
  EXPECT_DOUBLE_EQ(j.at("dominant_frequency_cm-1").get<double>(), 223.0);
}

TEST(Manifest, JsonFields) {
  Manifest m;
  m.subcommand = "witness";
  m.seed = 42;
  m.files = {"a.csv"};
  m.extra["levels"] = "10";
  const nlohmann::json j = manifest_to_json(m);
  EXPECT_EQ(j.at("subcommand"), "witness");
  EXPECT_EQ(j.at("seed").get<std::uint64_t>(), 42u);
  EXPECT_EQ(j.at("files").size(), 1u);
}
