#pragma once

// Deterministic synthetic restaurant-review generator for the test and
// benchmark suites. The grammar is deliberately richer than a small
// character model can absorb from a few hundred samples: long rare dish
// names, varied sentence templates, prices and punctuation. That gap is
// what the dual-model detector benchmarks rely on.

#include <string>
#include <vector>

#include "revkit/corpus.hpp"
#include "revkit/prng.hpp"

namespace synth {

inline const std::vector<std::string>& food_nouns() {
  static const std::vector<std::string> v = {
      "pizza",      "pasta",      "sushi",      "ramen",      "risotto",
      "lasagna",    "gnocchi",    "tiramisu",   "bruschetta", "calamari",
      "carbonara",  "margherita", "pepperoni",  "mozzarella", "prosciutto",
      "gelato",     "espresso",   "cappuccino", "panini",     "focaccia",
      "salmon",     "tempura",    "edamame",    "gyoza",      "brisket",
      "coleslaw",   "cornbread",  "jambalaya",  "gumbo",      "quesadilla",
      "guacamole",  "enchilada",  "churros",    "paella",     "chorizo",
      "gazpacho",   "falafel",    "hummus",     "shawarma",   "baklava",
      "dumplings",  "pancakes",   "waffles",    "meatballs",  "flatbread",
      "ceviche",    "empanadas",  "croquettes", "bouillabaisse", "ratatouille",
      "minestrone", "schnitzel",  "goulash",    "pierogi",    "moussaka",
      "tabbouleh",  "tzatziki",   "souvlaki",   "carpaccio",  "antipasto",
  };
  return v;
}

inline const std::vector<std::string>& adjectives() {
  static const std::vector<std::string> v = {
      "delicious",   "fantastic",  "remarkable", "exquisite",  "sublime",
      "crispy",      "tender",     "succulent",  "flavorful",  "aromatic",
      "delectable",  "scrumptious", "heavenly",  "outstanding", "impeccable",
      "marvelous",   "satisfying", "generous",   "authentic",  "traditional",
      "innovative",  "seasonal",   "homemade",   "buttery",    "zesty",
      "tangy",       "smoky",      "savory",     "creamy",     "velvety",
      "hearty",      "refreshing", "memorable",  "extraordinary", "phenomenal",
      "spectacular", "incredible", "wonderful",  "charming",   "delightful",
  };
  return v;
}

inline const std::vector<std::string>& staff_nouns() {
  static const std::vector<std::string> v = {"waiter",   "waitress", "server", "chef",
                                             "bartender", "hostess", "manager", "sommelier"};
  return v;
}

inline const std::vector<std::string>& place_nouns() {
  static const std::vector<std::string> v = {"restaurant", "place",  "spot",  "bistro",
                                             "trattoria",  "eatery", "diner", "cafe"};
  return v;
}

inline std::string make_review(revkit::Rng& rng) {
  const auto pick = [&rng](const std::vector<std::string>& bank) -> const std::string& {
    return bank[rng.next_below(bank.size())];
  };
  const auto capitalize = [](std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
  };

  static const std::vector<std::string> verbs = {"ordered", "tried",  "sampled",    "shared",
                                                 "savored", "enjoyed", "recommended", "loved"};
  static const std::vector<std::string> adverbs = {"absolutely",    "truly",     "genuinely",
                                                   "remarkably",    "incredibly", "exceptionally",
                                                   "wonderfully",   "perfectly"};
  static const std::vector<std::string> relatives = {"wife",   "husband", "mother",
                                                     "father", "friend",  "colleague"};
  static const std::vector<std::string> moods = {"cozy",    "intimate", "vibrant",
                                                 "relaxed", "elegant",  "rustic"};
  static const std::vector<std::string> days = {"monday", "tuesday",  "wednesday", "thursday",
                                                "friday", "saturday", "sunday"};
  static const std::vector<std::string> closers = {
      "Highly recommended!", "Five stars from me!", "I cannot wait to come back.",
      "Worth every single visit.", "You will not regret it!"};

  std::string review;
  const auto add = [&review](const std::string& sentence) {
    if (!review.empty()) review.push_back(' ');
    review += sentence;
  };

  if (rng.next_below(3) == 0) {
    switch (rng.next_below(3)) {
      case 0: add("What a " + pick(adjectives()) + " experience!"); break;
      case 1: add("I visited last " + pick(days) + " evening."); break;
      default: add("We celebrated a birthday at this " + pick(place_nouns()) + "."); break;
    }
  }

  const int body = 3 + static_cast<int>(rng.next_below(3));
  for (int s = 0; s < body; ++s) {
    switch (rng.next_below(10)) {
      case 0:
        add("The " + pick(food_nouns()) + " was " + pick(adverbs) + " " + pick(adjectives()) + ".");
        break;
      case 1:
        add("I " + pick(verbs) + " the " + pick(food_nouns()) + " and the " + pick(food_nouns()) +
            ".");
        break;
      case 2:
        add("Our " + pick(staff_nouns()) + " was attentive and made " + pick(adjectives()) +
            " suggestions.");
        break;
      case 3:
        add("The " + pick(food_nouns()) + " arrived promptly and tasted " + pick(adjectives()) +
            ".");
        break;
      case 4: {
        const int dollars = 8 + static_cast<int>(rng.next_below(32));
        const int cents = static_cast<int>(rng.next_below(4)) * 25;
        char price[16];
        std::snprintf(price, sizeof price, "%d.%02d", dollars, cents);
        add("We paid $" + std::string(price) + " for the " + pick(food_nouns()) +
            " and it was worth every penny.");
        break;
      }
      case 5:
        add("This " + pick(place_nouns()) + " serves the most " + pick(adjectives()) + " " +
            pick(food_nouns()) + " in town.");
        break;
      case 6:
        add("My " + pick(relatives) + " " + pick(verbs) + " the " + pick(food_nouns()) + ".");
        break;
      case 7:
        add("Everything from the " + pick(food_nouns()) + " to the " + pick(food_nouns()) +
            " was " + pick(adjectives()) + ".");
        break;
      case 8:
        add("The atmosphere was " + pick(moods) + " and the service " + pick(adjectives()) + ".");
        break;
      default:
        add(capitalize("the chef's special " + pick(food_nouns()) + " with " +
                       pick(food_nouns()) + " sauce was " + pick(adjectives()) + "."));
        break;
    }
  }

  if (rng.next_below(2) == 0) add(closers[rng.next_below(closers.size())]);
  return review;
}

inline revkit::Corpus make_corpus(int count, uint64_t seed,
                                  revkit::Label label = revkit::Label::kReal,
                                  const std::string& source = "synthetic") {
  revkit::Rng rng(seed);
  revkit::Corpus corpus;
  corpus.source = source;
  corpus.reviews.reserve(count);
  for (int i = 0; i < count; ++i) {
    revkit::Review r;
    r.text = revkit::preprocess(make_review(rng));
    r.stars = 5;
    r.label = label;
    corpus.reviews.push_back(std::move(r));
  }
  return corpus;
}

}  // namespace synth
