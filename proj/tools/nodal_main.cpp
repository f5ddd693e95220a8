#include "nodal/app.hpp"
#include "nodal/errors.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string help;
    std::optional<nodal::RunConfig> config;
    try {
        config = nodal::parse_command_line(args, help);
    } catch (const nodal::ValidationError& e) {
        nlohmann::json doc = {{"schema_version", nodal::RunConfig::schema_version},
                              {"error", {{"kind", "validation"}, {"message", e.what()}}}};
        std::cout << doc.dump(2) << '\n';
        return nodal::exit_validation;
    }
    if (!config) {
        std::cout << help;
        return nodal::exit_ok;
    }
    const auto result = nodal::run(*config);
    std::cout << result.output;
    return result.exit_code;
}
