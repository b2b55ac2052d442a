#include <string>
#include <vector>

#include <qineq/cli.hpp>

int main(int argc, char** argv)
{
    const std::vector<std::string> args(argv + 1, argv + argc);
    return qineq::cli::run(args);
}
