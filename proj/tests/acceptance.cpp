// Acceptance gate: runs the full validation suite twice with the same seed,
// prints one line per criterion and compares the two output directories.
//
// Exit status is 0 once every line has been printed; pass --strict to make it
// reflect the criteria themselves.

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "cover/validation.hpp"

namespace fs = std::filesystem;
using namespace cover;

namespace {

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::vector<std::string> listing(const fs::path& dir)
{
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(dir))
        names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    return names;
}

}  // namespace

int main(int argc, char** argv)
{
    bool strict = false;
    bool quick = false;
    fs::path root = "acceptance_output";
    for (int i = 1; i < argc; ++i)
    {
        if (!std::strcmp(argv[i], "--strict"))
            strict = true;
        else if (!std::strcmp(argv[i], "--quick"))
            quick = true;
        else
            root = argv[i];
    }
    const auto suite = quick ? validation::Suite::quick : validation::Suite::full;
    const cli::Scenario base;  // built-in baseline, default seed

    const fs::path first = root / "run1";
    const fs::path second = root / "run2";
    fs::remove_all(root);

    std::cerr << "first run\n";
    const auto result = validation::run_suite(base, suite, first, &std::cerr);
    std::cerr << "second run\n";
    validation::run_suite(base, suite, second, &std::cerr);

    bool all = true;
    for (const auto& c : result.checks)
    {
        std::printf("%s %-4s value %.6g %s %.6g | %s | %s\n", c.pass ? "PASS" : "FAIL",
                    c.id.c_str(), c.value, c.relation.c_str(), c.limit, c.description.c_str(),
                    c.detail.c_str());
        all = all && c.pass;
    }

    const auto names = listing(first);
    bool identical = names == listing(second);
    std::string differing;
    for (const auto& n : names)
        if (identical && slurp(first / n) != slurp(second / n))
        {
            identical = false;
            differing = n;
        }
    std::printf("%s C11  files %zu identical %s | repeated %s suite with seed %llu gives "
                "byte-identical report and CSVs | %s\n",
                identical ? "PASS" : "FAIL", names.size(), identical ? "yes" : "no",
                quick ? "quick" : "full", static_cast<unsigned long long>(base.plan.base_seed),
                identical ? "compared every file" : ("first difference in " + differing).c_str());
    all = all && identical;
    std::fflush(stdout);
    return strict && !all ? 1 : 0;
}
