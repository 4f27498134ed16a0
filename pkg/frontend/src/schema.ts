// Response validation for the orchestrator's JSON API. Every payload the
// dashboard renders passes through one of these schemas first, so a drifted
// backend fails loudly instead of painting half a page.
import { z } from "zod";

export const SUPPORTED_SCHEMA_VERSION = "1";

export const PathEntrySchema = z.looseObject({
  id: z.string(),
  entities: z.array(z.string()),
  relations: z.array(z.string()),
  score: z.number(),
});
export type PathEntry = z.infer<typeof PathEntrySchema>;

export const TranscriptEventSchema = z.looseObject({
  round: z.number().int(),
  role: z.string(),
  event_type: z.string(),
  score: z.number(),
  confidence: z.number(),
  claims: z.array(z.string()),
  citations: z.array(z.unknown()),
  flags: z.array(z.string()),
});
export type TranscriptEvent = z.infer<typeof TranscriptEventSchema>;

export const NoveltyVerdictSchema = z.looseObject({
  hypothesis_id: z.string(),
  final_score: z.number(),
  critic_scores: z.record(z.string(), z.number()),
  debate_occurred: z.boolean(),
  rounds_used: z.number().int(),
  sigma_initial: z.number(),
  sigma_final: z.number(),
  terminated_reason: z.string(),
  // present on the run-level copy, absent from stage output
  below_threshold: z.boolean().optional(),
  penalties_applied: z.array(z.looseObject({ round: z.number().int().optional() })),
  transcript: z.array(TranscriptEventSchema),
});
export type NoveltyVerdict = z.infer<typeof NoveltyVerdictSchema>;

export const SubScoreSchema = z.looseObject({
  value: z.number(),
  notes: z.array(z.string()),
});
export type SubScore = z.infer<typeof SubScoreSchema>;

// Assessment criteria arrive as sibling keys next to the totals, so the
// schema names them explicitly rather than using a catchall record.
export const FeasibilityAssessmentSchema = z.looseObject({
  data_availability: SubScoreSchema,
  tech_readiness: SubScoreSchema,
  logical_soundness: SubScoreSchema,
  resource_constraints: SubScoreSchema,
  weighted_total: z.number(),
  verdict: z.string(),
  weights: z.record(z.string(), z.number()),
});
export type FeasibilityAssessment = z.infer<typeof FeasibilityAssessmentSchema>;

export const CRITERION_ORDER = [
  "data_availability",
  "tech_readiness",
  "logical_soundness",
  "resource_constraints",
] as const;
export type CriterionName = (typeof CRITERION_ORDER)[number];

// Stage outputs embed the bare template; the run-level copy also carries
// an id and provenance.
export const HypothesisSchema = z.looseObject({
  id: z.string().optional(),
  statement: z.string(),
  population: z.string(),
  variables: z.array(z.string()),
  outcome: z.string(),
  expected_directionality: z.string(),
  validation_feasibility: z.string(),
});
export type Hypothesis = z.infer<typeof HypothesisSchema>;

export const StageRecordSchema = z.looseObject({
  name: z.string(),
  iteration: z.number().int(),
  input_sources: z.array(z.string()),
  input_digest: z.string(),
  output: z.record(z.string(), z.unknown()),
  prompt_tokens: z.number().int(),
  completion_tokens: z.number().int(),
  wall_time: z.number(),
});
export type StageRecord = z.infer<typeof StageRecordSchema>;

export const ReviewSchema = z.looseObject({
  action: z.string(),
  edited_statement: z.string().nullable(),
  note: z.string().nullable(),
  run_id: z.string(),
  hypothesis_id: z.string(),
  timestamp: z.number(),
});
export type Review = z.infer<typeof ReviewSchema>;

// Arrives as an empty object until the coding stage has run.
export const ValidationSchema = z.looseObject({
  status: z.string().default(""),
  artifacts: z.array(z.string()).default([]),
  attempts: z.array(z.unknown()).default([]),
  results: z.array(z.looseObject({ step: z.number().int().optional(), tool: z.string().optional() }))
    .default([]),
  violation: z.string().nullable().optional(),
});
export type ValidationReport = z.infer<typeof ValidationSchema>;

export const RunSchema = z.looseObject({
  run_id: z.string(),
  query: z.string(),
  mode: z.string(),
  status: z.string(),
  seed: z.number().int(),
  created_at: z.number(),
  stages: z.array(StageRecordSchema),
  hypothesis: HypothesisSchema.nullable(),
  verdicts: z.record(z.string(), z.unknown()),
  reviews: z.array(ReviewSchema),
  validation: ValidationSchema.nullable(),
  flags: z.array(z.string()),
  error: z.string().nullable(),
  terminated_by: z.string().nullable(),
  prompt_token_total: z.number().int(),
  completion_token_total: z.number().int(),
});
export type Run = z.infer<typeof RunSchema>;

export const RunBriefSchema = z.looseObject({
  run_id: z.string(),
  query: z.string(),
  mode: z.string(),
  status: z.string(),
  created_at: z.number(),
  stages_completed: z.number().int(),
  prompt_token_total: z.number().int(),
  completion_token_total: z.number().int(),
});
export type RunBrief = z.infer<typeof RunBriefSchema>;

export const PendingReviewSchema = z.looseObject({
  run_id: z.string(),
  stage: z.string(),
  draft_text: z.string(),
  hypothesis: HypothesisSchema,
});
export type PendingReview = z.infer<typeof PendingReviewSchema>;

export const ArtifactSchema = z.looseObject({
  run_id: z.string(),
  name: z.string(),
  media_type: z.string(),
  content: z.string(),
});
export type Artifact = z.infer<typeof ArtifactSchema>;

// Typed views over verdict sub-objects that arrive untyped on the run.
export function noveltyVerdictOf(run: Run): NoveltyVerdict | null {
  const raw = run.verdicts["novelty"];
  return raw == null ? null : NoveltyVerdictSchema.parse(raw);
}

export function feasibilityOf(run: Run, key: string): FeasibilityAssessment | null {
  const raw = run.verdicts[key];
  return raw == null ? null : FeasibilityAssessmentSchema.parse(raw);
}
