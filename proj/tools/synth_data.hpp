#pragma once

// Deterministic synthetic datasets for the bundled example workflows: a
// bibliographic table shaped like a venue export and a repository table shaped
// like a forge snapshot. Both are pure functions of the built-in seeds.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "swf/rng.hpp"

namespace synth {

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

// 1206 papers; exactly 460 in 2021..2025, of which exactly 192 have more than
// 6 pages.
inline std::string papers_csv() {
    struct Row {
        int year;
        int pages;
    };
    std::vector<Row> rows;
    swf::SeededRng rng(20240516);

    for (int i = 0; i < 1206; ++i) {
        Row r{};
        if (i < 460) {
            r.year = 2021 + i % 5;
            r.pages = i < 192 ? 7 + static_cast<int>(rng.below(6)) /* 7..12 */
                              : 2 + static_cast<int>(rng.below(5)) /* 2..6 */;
        } else {
            r.year = 2016 + i % 5;  // 2016..2020
            r.pages = 2 + static_cast<int>(rng.below(11));  // 2..12
        }
        rows.push_back(r);
    }
    // Shuffle so the construction order is not visible in the file.
    for (std::size_t i = rows.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(rows[i - 1], rows[j]);
    }

    std::string out = "doi,title,year,numPages\r\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "10.5555/paper.%04zu,Study %04zu,%d,%d\r\n",
                      i + 1, i + 1, rows[i].year, rows[i].pages);
        out += buf;
    }
    return out;
}

// Keyword export joined onto the papers by doi; covers every other paper.
inline std::string keywords_csv() {
    static const char* pools[] = {"mining;sampling", "testing;defects", "ml;models",
                                  "security;vulnerabilities", "process;teams"};
    std::string out = "doi,keywords\r\n";
    swf::SeededRng rng(777001);
    for (int i = 1; i <= 1206; i += 2) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "10.5555/paper.%04d,%s\r\n", i,
                      pools[rng.below(5)]);
        out += buf;
    }
    return out;
}

// Repository frame: ~half of the rows have a last commit after 2023-01-01, and
// committer counts straddle the <5 boundary so both strata exceed 10000.
inline std::string repos_csv(std::size_t rows = 100000) {
    std::string out = "swh_id,commit_count,commiter_count,latest_commit_date\r\n";
    out.reserve(rows * 48);
    swf::SeededRng rng(424242);
    for (std::size_t i = 0; i < rows; ++i) {
        // Long-tail commit counts: most repos are small, a few are huge.
        std::uint64_t r = rng.below(1000);
        std::uint64_t commits;
        if (r < 700)
            commits = 1 + rng.below(200);
        else if (r < 950)
            commits = 200 + rng.below(5000);
        else if (r < 998)
            commits = 5000 + rng.below(300000);
        else
            commits = 300000 + rng.below(4000000);

        std::uint64_t committers = 1 + rng.below(rng.below(2) ? 4 : 40);

        int year = 2015 + static_cast<int>(rng.below(11));  // 2015..2025
        int month = 1 + static_cast<int>(rng.below(12));
        int day = 1 + static_cast<int>(rng.below(28));

        char buf[96];
        std::snprintf(buf, sizeof(buf),
                      "swh:1:rev:%010zu,%llu,%llu,%04d-%02d-%02d\r\n", i,
                      static_cast<unsigned long long>(commits),
                      static_cast<unsigned long long>(committers), year, month, day);
        out += buf;
    }
    return out;
}

}  // namespace synth
