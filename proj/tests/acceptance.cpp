// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "cp1lab/checks.hpp"

int main(int argc, char** argv) {
    cp1lab::CheckOptions opt;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--artifacts" && i + 1 < argc)
            opt.artifact_dir = argv[++i];
        else if (arg == "--only" && i + 1 < argc)
            opt.only.push_back(std::atoi(argv[++i]));
    }
    std::ofstream report;
    if (!opt.artifact_dir.empty()) {
        std::filesystem::create_directories(opt.artifact_dir);
        report.open(opt.artifact_dir + "/acceptance_report.txt");
    }
    int failed = 0;
    auto emit = [&](const std::string& line) {
        std::cout << line << std::endl;
        if (report) report << line << std::endl;
    };
    cp1lab::run_checks(opt, [&](const cp1lab::CheckResult& r) {
        if (!r.pass) ++failed;
        emit(cp1lab::format_result(r));
    });
    emit(failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed");
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
