/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include "cbcode/harness.hpp"
#include "cbcode/png_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace cbcode;
namespace fs = std::filesystem;

namespace {

struct Result
{
	int code;
	std::string out;
	std::string err;
};

Result Cli(std::vector<std::string> args)
{
	std::ostringstream out, err;
	int code = cli::Run(args, out, err);
	return {code, out.str(), err.str()};
}

int Process(const std::string& args)
{
	std::string cmd = std::string(CBCODE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
	int status = std::system(cmd.c_str());
	return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct TempDir
{
	fs::path path;
	TempDir()
	{
		path = fs::temp_directory_path() / ("cbcode_cli_" + std::to_string(std::random_device{}()));
		fs::create_directories(path);
	}
	~TempDir() { fs::remove_all(path); }
	std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string Slurp(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	std::stringstream s;
	s << in.rdbuf();
	return s.str();
}

std::string DropTiming(const std::string& csv)
{
	std::istringstream in(csv);
	std::string line, out;
	while (std::getline(in, line))
		out += (line.empty() || line[0] == '#' ? line : line.substr(0, line.rfind(','))) + "\n";
	return out;
}

} // namespace

TEST_CASE("data argument parsing")
{
	CHECK(cli::ParseData("0") == 0u);
	CHECK(cli::ParseData("42") == 42u);
	CHECK(cli::ParseData("000000000330") == 42u);
	CHECK(cli::ParseData("C3C9F0C3C9F0") == SymbolsToPayload(*ParseSymbols("C3C9F0C3C9F0")));
	CHECK(cli::ParseData("2176782335") == PayloadLimit - 1);
	CHECK_FALSE(cli::ParseData("2176782336").has_value());
	CHECK_FALSE(cli::ParseData("9999999999").has_value());
	CHECK_FALSE(cli::ParseData("3000000000000").has_value());
	CHECK_FALSE(cli::ParseData("-1").has_value());
	CHECK_FALSE(cli::ParseData("C3C9F0C3C9F").has_value());
	CHECK(cli::ParseHexColor("#FF8800") == Rgb{0xFF, 0x88, 0x00});
	CHECK_FALSE(cli::ParseHexColor("FF880").has_value());
	auto q = cli::ParseRegion("20,2,24,2,24,6,20,6");
	REQUIRE(q.has_value());
	CHECK((*q)[2].x == 24);
	CHECK_FALSE(cli::ParseRegion("1,2,3").has_value());
}

TEST_CASE("encode")
{
	TempDir dir;
	Result r = Cli({"encode", "--data", "0", "--block-px", "65", "--out", dir / "zero.png"});
	CHECK(r.code == 0);
	CHECK(r.out.find("crc=00") != std::string::npos);
	CHECK(r.out.find("size=260x260") != std::string::npos);
	CHECK(ReadPng(dir / "zero.png") == Encode(0));

	r = Cli({"encode", "--data", "C3C9F0C3C9F0", "--block-px", "1", "--out", dir / "tiny.png"});
	CHECK(r.code == 0);
	CHECK(ReadPng(dir / "tiny.png").width() == 4);
	CHECK(r.out.find("symbols=C3C9F0C3C9F0") != std::string::npos);

	CHECK(Cli({"encode", "--data", "3000000000000", "--out", dir / "x.png"}).code == cli::ExitUsage);
	CHECK(Cli({"encode", "--data", "1", "--block-px", "0", "--out", dir / "x.png"}).code == cli::ExitUsage);
	CHECK(Cli({"encode", "--data", "1"}).code == cli::ExitUsage);
	CHECK(Cli({"encode", "--data", "1", "--out", dir / "missing/dir/x.png"}).code == cli::ExitIo);
	CHECK(Cli({}).code == cli::ExitUsage);
	CHECK(Cli({"--help"}).code == cli::ExitOk);
}

TEST_CASE("decode exit codes and output")
{
	TempDir dir;
	WritePng(dir / "clean.png", Encode(123456789));
	Result r = Cli({"decode", dir / "clean.png"});
	CHECK(r.code == cli::ExitOk);
	CHECK(r.out.find("payload: 123456789") != std::string::npos);

	r = Cli({"decode", dir / "clean.png", "--json", "--samples", "20"});
	CHECK(r.code == cli::ExitOk);
	auto j = nlohmann::json::parse(r.out);
	CHECK(j.is_object());
	CHECK(j["payload"] == 123456789);
	CHECK(j["crc_ok"] == true);
	CHECK(j.contains("version"));

	WritePng(dir / "white.png", RasterImage(120, 120));
	CHECK(Cli({"decode", dir / "white.png"}).code == cli::ExitNotFound);
	auto nf = nlohmann::json::parse(Cli({"decode", dir / "white.png", "--json"}).out);
	CHECK(nf["found"] == false);

	RasterImage covered = Occlude(Encode(77), 6, 1.0, DefaultInterferenceColor);
	WritePng(dir / "covered.png", covered);
	CHECK(Cli({"decode", dir / "covered.png"}).code == cli::ExitCrcFailure);

	WritePng(dir / "big.png", Occlude(Encode(77, {200, 0, White}), 6, 1.0, DefaultInterferenceColor, {200, 0, White}));
	CHECK(Cli({"decode", dir / "big.png", "--timeout-ms", "1"}).code == cli::ExitTimeout);

	CHECK(Cli({"decode", dir / "nope.png"}).code == cli::ExitIo);
	CHECK(Cli({"decode", dir / "clean.png", "--samples", "7"}).code == cli::ExitUsage);
	CHECK(Cli({"decode", dir / "clean.png", "--region", "1,2"}).code == cli::ExitUsage);

	// Strict mode rejects a V block drifted by a few levels.
	const CodeMatrix m = BuildMatrix(PayloadToSymbols(55555));
	const uint8_t drift = static_cast<uint8_t>(m.crc >= 128 ? m.crc - 3 : m.crc + 3);
	WritePng(dir / "drift.png", Occlude(Encode(55555), 4, 1.0, Rgb{drift, drift, drift}));
	CHECK(Cli({"decode", dir / "drift.png"}).code == cli::ExitOk);
	CHECK(Cli({"decode", dir / "drift.png", "--strict-crc"}).code == cli::ExitCrcFailure);
}

TEST_CASE("timeout environment override")
{
	TempDir dir;
	WritePng(dir / "big.png", Occlude(Encode(5, {200, 0, White}), 6, 1.0, DefaultInterferenceColor, {200, 0, White}));
	setenv("CBCODE_TIMEOUT_MS", "1", 1);
	CHECK(Cli({"decode", dir / "big.png"}).code == cli::ExitTimeout);
	CHECK(Cli({"decode", dir / "big.png", "--timeout-ms", "60000"}).code == cli::ExitCrcFailure);
	setenv("CBCODE_TIMEOUT_MS", "soon", 1);
	CHECK(Cli({"decode", dir / "big.png"}).code == cli::ExitUsage);
	unsetenv("CBCODE_TIMEOUT_MS");
}

TEST_CASE("encode then decode round trips through the CLI")
{
	TempDir dir;
	std::mt19937_64 rng(21);
	for (int i = 0; i < 20; ++i) {
		Payload p = i == 0 ? PayloadLimit - 1 : RandomPayload(rng);
		std::string path = dir / "rt.png";
		REQUIRE(Cli({"encode", "--data", std::to_string(p), "--block-px", "20", "--border-px", "5", "--out", path})
					.code
				== 0);
		Result r = Cli({"decode", path, "--json"});
		CHECK(r.code == 0);
		CHECK(nlohmann::json::parse(r.out)["payload"] == p);
	}
}

TEST_CASE("embed and region decode")
{
	TempDir dir;
	REQUIRE(Cli({"encode", "--data", "987654", "--block-px", "1", "--out", dir / "tiny.png"}).code == 0);
	Result e = Cli({"embed", dir / "tiny.png", "--canvas", "28x28", "--at", "20,2", "--out", dir / "host.png"});
	CHECK(e.code == 0);
	CHECK(e.out.find("region=20,2,24,2,24,6,20,6") != std::string::npos);
	Result r = Cli({"decode", dir / "host.png", "--region", "20,2,24,2,24,6,20,6", "--json"});
	CHECK(r.code == 0);
	CHECK(nlohmann::json::parse(r.out)["payload"] == 987654);

	CHECK(Cli({"embed", dir / "tiny.png", "--canvas", "28x28", "--at", "26,2", "--out", dir / "x.png"}).code
		  == cli::ExitUsage);
	CHECK(Cli({"embed", dir / "tiny.png", "--at", "0,0", "--out", dir / "x.png"}).code == cli::ExitUsage);
	CHECK(Cli({"embed", dir / "tiny.png", "--host", dir / "host.png", "--at", "1,1", "--out", dir / "y.png"}).code
		  == 0);
}

TEST_CASE("degrade")
{
	TempDir dir;
	const RasterImage src = Encode(4242);
	WritePng(dir / "src.png", src);

	CHECK(Cli({"degrade", dir / "src.png", "--scale", "0.25", "--method", "bilinear", "--out", dir / "s.png"}).code
		  == 0);
	CHECK(ReadPng(dir / "s.png").width() == 65);

	CHECK(Cli({"degrade", dir / "src.png", "--occlude", "cell=3,cov=1.0,color=FF8800", "--out", dir / "o.png"}).code
		  == 0);
	CHECK(ReadPng(dir / "o.png") == Occlude(src, 3, 1.0, DefaultInterferenceColor));

	CHECK(Cli({"degrade", dir / "src.png", "--rotate", "90", "--out", dir / "r.png"}).code == 0);
	CHECK(ReadPng(dir / "r.png") == RotateImage(src, 90));

	CHECK(Cli({"degrade", dir / "src.png", "--noise", "gaussian,sigma=8,seed=3", "--out", dir / "n1.png"}).code == 0);
	CHECK(Cli({"degrade", dir / "src.png", "--noise", "gaussian,sigma=8,seed=3", "--out", dir / "n2.png"}).code == 0);
	CHECK(Slurp(dir / "n1.png") == Slurp(dir / "n2.png"));

	CHECK(Cli({"degrade", dir / "src.png", "--out", dir / "x.png"}).code == cli::ExitUsage);
	CHECK(Cli({"degrade", dir / "src.png", "--rotate", "5", "--scale", "2", "--out", dir / "x.png"}).code
		  == cli::ExitUsage);
	CHECK(Cli({"degrade", dir / "src.png", "--occlude", "cell=17", "--out", dir / "x.png"}).code == cli::ExitUsage);
	CHECK(Cli({"degrade", dir / "src.png", "--noise", "pink", "--out", dir / "x.png"}).code == cli::ExitUsage);
	CHECK(Cli({"degrade", dir / "src.png", "--scale", "0", "--out", dir / "x.png"}).code == cli::ExitUsage);
}

TEST_CASE("bench")
{
	TempDir dir;
	std::vector<std::string> args = {"bench", "scale-sweep", "--factors", "1.0,0.5", "--trials", "5", "--seed", "9"};
	auto a = args, b = args;
	a.insert(a.end(), {"--csv", dir / "a.csv"});
	b.insert(b.end(), {"--csv", dir / "b.csv"});
	Result ra = Cli(a);
	CHECK(ra.code == 0);
	CHECK(ra.out.find("factor") != std::string::npos);
	CHECK(Cli(b).code == 0);
	std::string csv = Slurp(dir / "a.csv");
	CHECK(csv.rfind("# seed=9\n", 0) == 0);
	CHECK(DropTiming(csv) == DropTiming(Slurp(dir / "b.csv")));
	CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

	Result mc = Cli({"bench", "occlusion-mc", "--trials", "10", "--coverage-max", "0"});
	CHECK(mc.code == 0);
	CHECK(mc.out.find("\n10,0,10,1.0000,") != std::string::npos);

	Result ss = Cli({"bench", "sampling-sweep", "--factors", "1", "--trials", "2", "--samples", "5,20"});
	CHECK(ss.code == 0);
	CHECK(ss.out.find("\n1,20,2,2,1.0000,") != std::string::npos);

	CHECK(Cli({"bench", "fft"}).code == cli::ExitUsage);
	CHECK(Cli({"bench", "scale-sweep", "--trials", "0"}).code == cli::ExitUsage);
	CHECK(Cli({"bench", "scale-sweep", "--trials", "1", "--factors", "1", "--csv", dir / "no/such/dir.csv"}).code
		  == cli::ExitIo);
}

TEST_CASE("executable exit codes")
{
	TempDir dir;
	CHECK(Process("encode --data 42 --out " + (dir / "c.png")) == 0);
	CHECK(Process("decode " + (dir / "c.png")) == 0);
	WritePng(dir / "w.png", RasterImage(50, 50));
	CHECK(Process("decode " + (dir / "w.png")) == 2);
	WritePng(dir / "f.png", Occlude(Encode(42), 9, 1.0, DefaultInterferenceColor));
	CHECK(Process("decode " + (dir / "f.png")) == 3);
	CHECK(Process("decode " + (dir / "none.png")) == 5);
	CHECK(Process("frobnicate") == 1);
	CHECK(Process("encode --data 3000000000000 --out " + (dir / "x.png")) == 1);
}
