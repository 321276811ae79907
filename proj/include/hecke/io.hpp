#pragma once

#include <json.hpp>

#include "hecke/mellin.hpp"

namespace hecke {

using json = nlohmann::json;

// RingElem <-> JSON array of integers (coefficient vector, constant first).
json to_json(const RingElem& e);
RingElem ring_from_json(int p, const json& j);

// GroupElem: {"p": int, "a": [...], "b": [...], "c": [...], "d": [...]}.
json to_json(const GroupElem& m);
GroupElem group_from_json(const json& j);

// QuadraticForm: {"p": int, "A": [...], "B": [...], "C": [...]}.
json to_json(const QuadraticForm& q);
QuadraticForm form_from_json(const json& j);

// Cycle report with members, interval indices, certificate data.
json cycle_report(const SimpleCycle& c);

// RpfSpec: {"p", "k", "c0", "nu", "eta",
//           "terms": [{"seed_form": <form>, "d": float}]}.
// Loading enumerates and certifies each seed's cycle.
json to_json(const RpfSpec& spec);
RpfSpec spec_from_json(const json& j, const EnumerationOptions& opts = {});

// FourierSeries: {"lambda_p": int, "weight": int, "coeffs": [floats]}.
json to_json(const FourierSeries& s);
FourierSeries series_from_json(const json& j);

json to_json(const RelationReport& r);
json to_json(const SecondRelationReport& r);
json to_json(const InverseMellinReport& r);
json to_json(const FunctionalEquationReport& r);

// A short parseable form "[A,B,C]" with integer entries (constant
// coefficients only) for CLI convenience, e.g. "[1,1,-1]".
QuadraticForm form_from_brackets(int p, const std::string& text);

}  // namespace hecke
