// End-to-end checks of the command-line tool: exit codes, JSON determinism,
// and the documented error paths.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct CmdResult {
    int code = -1;
    std::string out;
};

CmdResult run_cli(const std::string& args) {
    std::string cmd = std::string(ISOFLAG_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    CmdResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.code = WEXITSTATUS(status);
    return r;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path);
    os << content;
}

} // namespace

TEST_CASE("classify: verdicts and exit codes") {
    auto r = run_cli("classify --a n --b n --c 1^n --n 3");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"finite\": true") != std::string::npos);
    CHECK(r.out.find("\"I\"") != std::string::npos);

    r = run_cli("classify --a 2 --b 2 --c 2 --n 3");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"finite\": false") != std::string::npos);

    r = run_cli("classify --a 5 --b 1 --c 1 --n 3");
    CHECK(r.code == 2);

    // identical invocations produce byte-identical stdout
    auto r2 = run_cli("classify --a n --b n --c 1^n --n 3");
    CHECK(r2.out.size() > 0);
    CHECK(run_cli("classify --a n --b n --c 1^n --n 3").out == r2.out);
}

TEST_CASE("canonicalize and invariants round trip through files") {
    write_file("/tmp/isoflag_pair.txt", "1 3\n1 3 3\n1 0 0\n1 3 3\n1 0 0\n");
    write_file("/tmp/isoflag_v.txt", "1 3 3\n1 1 1\n");
    auto r = run_cli("canonicalize --n 1 --p 3 --pair /tmp/isoflag_pair.txt --v /tmp/isoflag_v.txt");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"eps\": 0") != std::string::npos);
    // tuple is b2 = 1
    CHECK(r.out.find("\"tuple\"") != std::string::npos);

    auto ri = run_cli("invariants --n 1 --p 3 --pair /tmp/isoflag_pair.txt --v /tmp/isoflag_v.txt");
    CHECK(ri.code == 0);

    // malformed matrix file: exit 2
    write_file("/tmp/isoflag_bad.txt", "1 3 3\n7 0\n");
    auto rb = run_cli("canonicalize --n 1 --p 3 --pair /tmp/isoflag_pair.txt --v /tmp/isoflag_bad.txt");
    CHECK(rb.code == 2);

    // un-normalized pair: exit 2
    write_file("/tmp/isoflag_pair_bad.txt", "1 3\n1 3 3\n0 0 1\n1 3 3\n0 0 1\n");
    auto rn = run_cli("canonicalize --n 1 --p 3 --pair /tmp/isoflag_pair_bad.txt --v /tmp/isoflag_v.txt");
    CHECK(rn.code == 2);
}

TEST_CASE("tuples and verify subcommands") {
    auto r = run_cli("tuples --n 1 --a1 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"count\": 3") != std::string::npos);

    r = run_cli("verify --suite roundtrip --n 2");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"pass\": true") != std::string::npos);

    r = run_cli("verify --suite nonsense");
    CHECK(r.code == 2);
}
