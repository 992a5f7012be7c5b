// Regenerates the bundled synthetic datasets. The small bibliographic tables
// are checked in; the 100k-row repository frame is written on demand because
// of its size.
#include <cstring>
#include <filesystem>
#include <iostream>

#include "synth_data.hpp"

int main(int argc, char** argv) {
    std::string dir = "data";
    bool with_repos = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--with-repos") == 0)
            with_repos = true;
        else
            dir = argv[i];
    }
    std::filesystem::create_directories(dir);
    synth::write_file(dir + "/papers.csv", synth::papers_csv());
    synth::write_file(dir + "/keywords.csv", synth::keywords_csv());
    std::cout << "wrote " << dir << "/papers.csv, " << dir << "/keywords.csv\n";
    if (with_repos) {
        synth::write_file(dir + "/repos.csv", synth::repos_csv());
        std::cout << "wrote " << dir << "/repos.csv\n";
    }
    return 0;
}
