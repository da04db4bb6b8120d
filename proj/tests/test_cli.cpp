#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mwdlab/cli.hpp"
#include "mwdlab/error.hpp"
#include "mwdlab/field_io.hpp"
#include "mwdlab/serialize.hpp"
#include "test_support.hpp"

using namespace mwdlab;
namespace fs = std::filesystem;

namespace {

const QuadratureConfig kQ{};

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("mwdlab-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                              "-" + std::to_string(reinterpret_cast<std::uintptr_t>(&kQ)));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PhaseSpaceField sample_field() {
  const Signal f = Signal::gaussian(1, 1.0).tf_shift({0.3}, {0.7});
  return mwd_fft(named::cohen(SquareMatrix::scalar(1, 0.25)), f, f,
                 PhaseSpaceGrid::uniform(1, Grid1D(-4, 4, 32), Grid1D(-4, 4, 32)), kQ);
}

}  // namespace

TEST(FieldIo, CsvRoundTripIsByteIdentical) {
  std::ostringstream first;
  write_field_csv(sample_field(), first);
  std::istringstream in(first.str());
  const PhaseSpaceField back = read_field_csv(in);
  std::ostringstream second;
  write_field_csv(back, second);
  EXPECT_EQ(first.str(), second.str());
  EXPECT_EQ(back.values, sample_field().values);
}

TEST(FieldIo, CsvHeader) {
  std::ostringstream out;
  write_field_csv(sample_field(), out);
  EXPECT_EQ(out.str().rfind("# mwdlab field v1\n# d=1\n# x_axis=-4:4:32\n# w_axis=-4:4:32\n", 0), 0u);
}

TEST(FieldIo, BinaryRoundTrip) {
  const PhaseSpaceField f = sample_field();
  std::ostringstream out;
  write_field_binary(f, out);
  const std::string bytes = out.str();
  EXPECT_EQ(bytes.substr(0, 4), "MWD1");
  EXPECT_EQ(bytes.size(), 4 + 4 + 2 * (8 + 8 + 4) + f.values.size() * 16);
  std::istringstream in(bytes);
  const PhaseSpaceField back = read_field_binary(in);
  EXPECT_EQ(back.values, f.values);
  EXPECT_EQ(back.grid.x_count(), f.grid.x_count());
}

TEST(FieldIo, Pgm) {
  std::ostringstream out;
  write_field_pgm(sample_field(), out);
  const std::string s = out.str();
  EXPECT_EQ(s.rfind("P5\n32 32\n65535\n", 0), 0u);
  EXPECT_EQ(s.size(), std::string("P5\n32 32\n65535\n").size() + 32 * 32 * 2);
}

TEST(FieldIo, SignalCsvRoundTrip) {
  const Signal f = Signal::hermite(2);
  const Grid1D axis(-6, 6, 256);
  std::ostringstream out;
  write_signal_csv(f, axis, out);
  std::istringstream in(out.str());
  const Signal back = read_signal_csv(in);
  for (std::size_t k = 0; k < axis.count(); k += 7)
    EXPECT_NEAR(std::abs(back.evaluate(axis.point(k)) - f.evaluate(axis.point(k))), 0.0, 1e-15);
  EXPECT_EQ(back.evaluate(100.0), cplx(0.0));
}

TEST(FieldIo, MalformedInput) {
  std::istringstream bad("# mwdlab field v1\n# d=1\n# x_axis=0:1\n");
  EXPECT_THROW(read_field_csv(bad), Error);
  EXPECT_THROW(parse_axis("1:0:4"), Error);
  std::istringstream junk("MWD0");
  EXPECT_THROW(read_field_binary(junk), Error);
}

TEST(Serialize, MatrixRoundTrip) {
  const BlockMatrix a = BlockMatrix::from_full(SquareMatrix{{0.7, -0.4}, {0.5, 0.9}});
  EXPECT_EQ(matrix_from_json(matrix_to_json(a)), a);
  const BlockMatrix w = matrix_from_json(R"({"d":1,"A11":[[1]],"A12":[[0.5]],"A21":[[1]],"A22":[[-0.5]]})");
  EXPECT_EQ(w, named::wigner(1));
  for (const char* bad : {"{", R"({"d":1})", R"({"d":2,"A11":[[1]],"A12":[[1]],"A21":[[1]],"A22":[[1]]})",
                          R"({"d":1,"A11":[["x"]],"A12":[[1]],"A21":[[1]],"A22":[[1]]})"}) {
    try {
      matrix_from_json(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Parse);
    }
  }
}

TEST(Serialize, SignalRoundTrip) {
  const Signal f = Signal::sum(
      {{cplx(1, 0.5), Signal::gaussian(1, 1.0).tf_shift({1.0}, {0.5})},
       {cplx(0.3, 0), Signal::hermite(2).dilate(2.0).conjugate().reflect()},
       {cplx(0, 1), Signal::tone(3, 5, 8)}});
  const Signal back = signal_from_json(signal_to_json(f));
  for (double t : {-2.0, -0.1, 0.0, 0.9, 3.5, 4.2})
    EXPECT_EQ(back.evaluate(t), f.evaluate(t));
  const Signal tone = signal_from_json(R"({"kind": "tone", "interval": [3,5], "freq": 8})");
  EXPECT_EQ(tone.evaluate(4.0), Signal::tone(3, 5, 8).evaluate(4.0));
  EXPECT_THROW(signal_from_json(R"({"kind": "wavelet"})"), Error);
}

TEST(Cli, ParseHelpers) {
  EXPECT_EQ(parse_square("0.25"), SquareMatrix::scalar(1, 0.25));
  EXPECT_EQ(parse_square("0,1,-1,0"), (SquareMatrix{{0, 1}, {-1, 0}}));
  EXPECT_THROW(parse_square("1,2,3"), Error);
  EXPECT_EQ(parse_matrix_spec("tau", 1, 0.3, ""), named::tau(1, 0.3));
  EXPECT_EQ(parse_matrix_spec("cohen", 1, 0.5, "0.25"), named::cohen(SquareMatrix::scalar(1, 0.25)));
  EXPECT_EQ(parse_grid_spec("-4:4:128,-4:4:128").x_count(), 128u);
  EXPECT_THROW(parse_grid_spec("-4:4:128"), Error);
  EXPECT_EQ(parse_signal_spec("gauss:1").evaluate(0.0), cplx(1.0));
  EXPECT_THROW(parse_signal_spec("gauss"), Error);
}

TEST(Cli, ComputeHappyPath) {
  const fs::path out = scratch() / "w.csv";
  const CliResult r = run({"compute", "--matrix", "wigner", "--signal", "gauss:1", "--grid", "-4:4:128,-4:4:128",
                     "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const PhaseSpaceField f = load_field(out.string());
  EXPECT_EQ(f.grid.x_count(), 128u);
  EXPECT_NEAR(f.at(64, 64).real(), std::sqrt(2.0), 1e-10);
}

TEST(Cli, ComputeCohenMatchesLibrary) {
  const fs::path out = scratch() / "c.bin";
  const CliResult r = run({"compute", "--matrix", "cohen", "--M", "0.25", "--signal", "hermite:1", "--grid",
                     "-4:4:32,-4:4:32", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const Signal h = Signal::hermite(1);
  const PhaseSpaceField want = mwd_fft(named::cohen(SquareMatrix::scalar(1, 0.25)), h, h,
                                       PhaseSpaceGrid::uniform(1, Grid1D(-4, 4, 32), Grid1D(-4, 4, 32)), kQ);
  EXPECT_EQ(load_field(out.string()).values, want.values);
}

TEST(Cli, ComputeFromSignalFile) {
  const fs::path sig = scratch() / "sig.csv";
  {
    std::ofstream f(sig);
    write_signal_csv(Signal::gaussian(1, 1.0), Grid1D(-6, 6, 512), f);
  }
  const CliResult r = run({"compute", "--signal", "file:" + sig.string(), "--grid", "-2:2:16,-2:2:16",
                     "--method", "direct"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  const PhaseSpaceField f = read_field_csv(in);
  EXPECT_NEAR(f.at(8, 8).real(), std::sqrt(2.0), 1e-8);
}

TEST(Cli, SingularMatrixFileExitsThree) {
  const fs::path m = scratch() / "singular.json";
  std::ofstream(m) << R"({"d":1,"A11":[[1]],"A12":[[2]],"A21":[[2]],"A22":[[4]]})";
  const CliResult r = run({"compute", "--matrix", "file:" + m.string(), "--grid", "-1:1:4,-1:1:4"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("SingularMatrix"), std::string::npos);
}

TEST(Cli, TailGuardExitsThree) {
  const CliResult r = run({"compute", "--signal", "gauss:4", "--radius", "1", "--grid", "-1:1:4,-1:1:4"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("TailTooFat"), std::string::npos);
  EXPECT_EQ(run({"compute", "--signal", "gauss:4", "--radius", "1", "--allow-truncation", "--grid",
                 "-1:1:4,-1:1:4"})
                .code,
            0);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"compute", "--grid", "nonsense"}).code, 2);
  EXPECT_EQ(run({"compute", "--matrix", "cohen"}).code, 2);
  EXPECT_EQ(run({"compute", "--matrix", "file:/nonexistent/a.json"}).code, 2);
  EXPECT_EQ(run({"verify", "nosuchsuite"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, VerifyGaussianOracle) {
  const CliResult r = run({"verify", "gaussian-oracle", "--M", "0.25", "--lambda", "2"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("\"passed\":true"), std::string::npos);
  EXPECT_EQ(r.out.find("\"passed\":false"), std::string::npos);
}

TEST(Cli, VerifyCovarianceStftFails) {
  const CliResult r = run({"verify", "covariance", "--matrix", "stft"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("\"passed\":false"), std::string::npos);
}

TEST(Cli, Interfere) {
  const CliResult r = run({"interfere", "--m", "0", "--i1", "3:5", "--i2", "9:13"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"v1\":[8.0,-10.0]"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"v2\":[8.0,10.0]"), std::string::npos) << r.out;
  EXPECT_EQ(run({"interfere", "--i1", "3:10", "--i2", "9:13"}).code, 2);
}

TEST(Cli, InterfereSweepWritesFields) {
  const std::string prefix = (scratch() / "sweep").string();
  const CliResult r = run({"interfere", "--m", "-0.5", "--m", "0", "--m", "0.5", "--out-prefix", prefix});
  ASSERT_EQ(r.code, 0) << r.err;
  for (int k = 0; k < 3; ++k) {
    EXPECT_TRUE(fs::exists(prefix + "-" + std::to_string(k) + ".csv"));
    EXPECT_EQ(slurp(prefix + "-" + std::to_string(k) + ".pgm").substr(0, 3), "P5\n");
  }
}

TEST(Cli, Kernel) {
  const CliResult r = run({"kernel", "--M", "0.5", "--grid", "0:1:2,0:1:2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# kind=chirp"), std::string::npos);
  // theta_{1/2}(0.5, 0.5) = 2 e^{i pi}
  EXPECT_NE(r.out.find("0.5,0.5,-2,"), std::string::npos) << r.out;
  const CliResult d = run({"kernel", "--M", "0", "--grid", "0:1:2,0:1:2"});
  EXPECT_NE(d.out.find("# kind=delta"), std::string::npos);
  EXPECT_NE(d.out.find("nan"), std::string::npos);
}

TEST(Cli, Oracle) {
  const CliResult r = run({"oracle", "--M", "0.25", "--lambda", "1", "--grid", "-1:1:2,-1:1:2"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  const PhaseSpaceField f = read_field_csv(in);
  EXPECT_NEAR(f.at(1, 1).real(), 1.2649110640673518, 1e-14);
}
