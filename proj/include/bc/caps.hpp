#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

namespace bc {

// Resource limits. BC_CAPS="order=N,enum=N,normalizer=N,nielsen=N" overrides defaults.
struct caps {
    std::uint64_t group_order = 10'000'000;
    std::uint64_t enumerate = 2'000'000;
    int normalizer_degree = 9;
    std::uint64_t nielsen_search = 10'000'000;

    static caps& get()
    {
        static caps c = from_env();
        return c;
    }

    static caps from_env()
    {
        caps c;
        const char* env = std::getenv("BC_CAPS");
        if (!env) return c;
        std::string s(env);
        std::size_t pos = 0;
        while (pos < s.size()) {
            auto end = s.find(',', pos);
            if (end == std::string::npos) end = s.size();
            auto item = s.substr(pos, end - pos);
            auto eq = item.find('=');
            if (eq != std::string::npos) {
                auto key = item.substr(0, eq);
                auto val = std::strtoull(item.c_str() + eq + 1, nullptr, 10);
                if (key == "order") c.group_order = val;
                else if (key == "enum") c.enumerate = val;
                else if (key == "normalizer") c.normalizer_degree = static_cast<int>(val);
                else if (key == "nielsen") c.nielsen_search = val;
            }
            pos = end + 1;
        }
        return c;
    }
};

}  // namespace bc
