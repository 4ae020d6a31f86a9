/** Figure recipes: what to read, how to plot it, where to write the image. */

import { readFileSync } from "node:fs";

export interface FigureRecipe {
  input: string[];
  kind: "heatmap" | "line";
  colorScale: "linear" | "log";
  output: string;
  title?: string;
  logX?: boolean;
  logY?: boolean;
  guideY?: number;
}

export class RecipeError extends Error {}

export function normalizeRecipe(raw: unknown, source = "recipe"): FigureRecipe {
  if (typeof raw !== "object" || raw === null) {
    throw new RecipeError(`${source}: recipe must be an object`);
  }
  const r = raw as Record<string, unknown>;
  const inputRaw = r["input"];
  const input =
    typeof inputRaw === "string" ? [inputRaw] : Array.isArray(inputRaw) ? inputRaw : [];
  if (input.length === 0 || !input.every((p) => typeof p === "string")) {
    throw new RecipeError(`${source}: 'input' must be a CSV path or list of paths`);
  }
  const kind = r["kind"];
  if (kind !== "heatmap" && kind !== "line") {
    throw new RecipeError(`${source}: 'kind' must be "heatmap" or "line"`);
  }
  const colorScale = r["color_scale"] ?? r["colorScale"] ?? "linear";
  if (colorScale !== "linear" && colorScale !== "log") {
    throw new RecipeError(`${source}: 'color_scale' must be "linear" or "log"`);
  }
  const output = r["output"];
  if (typeof output !== "string" || !output) {
    throw new RecipeError(`${source}: 'output' must be the image path`);
  }
  const guideY = r["guide_y"] ?? r["guideY"];
  if (guideY !== undefined && typeof guideY !== "number") {
    throw new RecipeError(`${source}: 'guide_y' must be a number`);
  }
  return {
    input: input as string[],
    kind,
    colorScale,
    output,
    title: typeof r["title"] === "string" ? r["title"] : undefined,
    logX: Boolean(r["log_x"] ?? r["logX"]),
    logY: Boolean(r["log_y"] ?? r["logY"]),
    guideY: guideY as number | undefined,
  };
}

export function loadRecipeFile(path: string): FigureRecipe {
  let parsed: unknown;
  try {
    parsed = JSON.parse(readFileSync(path, "utf-8"));
  } catch (err) {
    throw new RecipeError(`${path}: ${(err as Error).message}`);
  }
  return normalizeRecipe(parsed, path);
}
