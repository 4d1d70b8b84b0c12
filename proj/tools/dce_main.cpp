#include "dce/cli.hpp"

int main(int argc, char** argv)
{
    return dce::cli::run_cli(argc, argv);
}
