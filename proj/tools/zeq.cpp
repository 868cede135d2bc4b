#include <fstream>
#include <iostream>

#include <zeq/commands.hpp>
#include <zeq/error.hpp>

int main(int argc, char **argv)
{
    zeq::RunOptions opts;
    try {
        opts = zeq::parse_arguments(std::vector<std::string>(argv + 1, argv + argc));
    } catch (const zeq::Error &e) {
        std::cerr << "zeq: " << e.what() << "\nRun 'zeq --help' for usage.\n";
        return 1;
    }
    if (opts.help) {
        std::cout << opts.help_text;
        return 0;
    }
    const zeq::RunResult r = zeq::run(opts);
    const std::string report = zeq::dump_report(r.report);
    if (!opts.report_path.empty()) {
        std::ofstream out(opts.report_path, std::ios::binary);
        if (!out || !(out << report)) {
            std::cerr << "zeq: cannot write report to '" << opts.report_path << "'\n";
            return 1;
        }
    }
    if (opts.json) {
        std::cout << report;
    } else if (!r.report.contains("error")) {
        std::cout << r.summary;
    }
    if (r.exit_code != 0 && r.report.contains("error")) {
        std::cerr << "zeq: " << r.report["error"]["message"].get<std::string>() << "\n";
    }
    return r.exit_code;
}
