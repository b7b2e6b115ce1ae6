#include "commands.hpp"

int main(int argc, char** argv)
{
    return gridless2d::cli::run(argc, argv);
}
