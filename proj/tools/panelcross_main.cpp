#include "panelcross/cli.hpp"

int main(int argc, char** argv) { return panelcross::cli_dispatch(argc, argv); }
