#pragma once

#include "flmod/fl.hpp"
#include "flmod/mazsyn.hpp"

#include <iosfwd>
#include <string>

namespace flmod::io {

/* Line/field-addressed parse failure; maps to exit code 2 in the CLI. */
struct FormatError : Error {
    using Error::Error;
};

/* A module document: kind "fl" or "mazur" over the same underlying data. */
struct ModuleDoc {
    std::string kind = "fl";
    fl::FLModule mod;

    mazsyn::MazurModule as_mazur() const { return {mod.base, mod.phi}; }
};

ModuleDoc parse_module(std::istream& in);
ModuleDoc parse_module_string(const std::string& text);
ModuleDoc parse_module_file(const std::string& path);

/* Canonical emitter: emit(parse(x)) is canonically equal to parse-normalized x. */
std::string emit_module(const ModuleDoc& doc);

/* A morphism document: two embedded modules and per-degree matrices. */
struct MorphismDoc {
    ModuleDoc source, target;
    fl::FLMorphism morphism() const;
    std::vector<gmod::Mat> maps;
};

MorphismDoc parse_morphism(std::istream& in);
MorphismDoc parse_morphism_file(const std::string& path);
std::string emit_morphism(const MorphismDoc& doc);

}  // namespace flmod::io
