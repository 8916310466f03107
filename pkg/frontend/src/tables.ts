/** Dropdown choices, mirroring the engine's shipped static tables
 * (src/covarc/data/tables/). Names must match those tables verbatim:
 * the server rejects anything else with a field-level error. */

export const MASKS = [
  "No Mask",
  "2-layer woven nylon mask without nose bridge",
  "2-layer woven nylon mask with nose bridge",
  "2-layer woven nylon with nose bridge and filter insert",
  "2-layer woven nylon with nose bridge washed",
  "Cotton Bandana folded surgeon general style",
  "Cotton Bandana folded bandit style",
  "Single-layer woven polyester gaiter",
  "Single-layer woven polyester mask with ties",
  "Non-woven polypropylene mask with fixed ear loops",
  "3-layer knitted cotton mask with ear loops",
  "Surgical mask with ties",
  "Procedure mask with ear loops",
  "Procedure mask with loops tied, corners tucked",
  "Procedure mask with loops tied, corners tucked and ear guard",
  "Procedure mask with Clawed hair clip",
  "Procedure mask with fix-the-mask technique (rubber bands)",
  "Procedure mask with Nylon hosiery sleeve",
  "N95 respirator",
];

export const VACCINES = [
  "No Vaccine",
  "Pfizer (Dose 1)",
  "Pfizer (Dose 2)",
  "Pfizer (Dose 2) + Pfizer Booster",
  "Pfizer (Dose 2) + Moderna (Booster)",
  "Moderna (Dose 1)",
  "Moderna (Dose 2)",
  "J&J (Dose 1)",
  "J&J (Dose 1) + J&J Booster",
  "Astrazeneca (Dose 1)",
  "Astrazeneca (Dose 2)",
  "Astrazeneca (Dose 2) + Pfizer/Moderna (Booster)",
  "Novavax (Dose 1)",
];

export const SEXES = ["male", "female"];
