/**
 * Typed thin client for the doseopt /v1 API.
 *
 * The console performs no statistical computation: every number it shows
 * comes back from these calls verbatim (boundaries and probabilities arrive
 * as decimal strings and are displayed as-is).
 */

export interface ApiErrorBody {
  code: string;
  message: string;
  field: string | null;
}

export class ApiError extends Error {
  code: string;
  field: string | null;
  status: number;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.status = status;
    this.code = body.code;
    this.field = body.field;
  }
}

export interface RdsRow {
  n: number;
  n_tox: number;
  n_eff: number;
  rds: number | null;
  eliminated: boolean;
}

export interface Boundaries {
  target: string;
  phi1: string;
  phi2: string;
  lambda_e: string;
  lambda_d: string;
}

export interface DoseStateView {
  dose: number;
  n: number;
  x_t: number;
  x_e: number;
  eliminated: boolean;
  elimination_reason: string | null;
}

export interface TrialView {
  trial_id: string;
  status: string;
  created_at: string;
  warnings: string[];
  recommendation: number | null;
  final_obd: number | null;
  state: DoseStateView[];
  n_events: number;
}

export interface Decision {
  action: 'assign' | 'terminate';
  dose: number | null;
  rationale: Record<string, unknown>;
}

export interface CohortSubmission {
  dose: number;
  size: number;
  x_t: number;
  x_e: number;
  note?: string;
  override?: boolean;
  event_key: string;
}

export interface MeritSolution {
  n: number;
  m_t: number;
  m_e: number;
  achieved_t1e: string;
  achieved_power: string;
}

export interface SimulationResult {
  n_doses: number;
  n_sim: number;
  seed: number;
  selection_pct: number[];
  none_selected_pct: number;
  avg_patients: number[];
  avg_total_patients: number;
  early_termination_pct: number;
  true_best_dose: number;
  avg_patients_at_true_best: number;
}

export interface SimulationJob {
  status: 'running' | 'done' | 'failed';
  result: SimulationResult | null;
  error?: string;
}

export class DoseoptApi {
  constructor(
    private baseUrl: string,
    private token?: string,
    private fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init: RequestInit = {}): Promise<T> {
    const headers: Record<string, string> = {
      'content-type': 'application/json',
      ...(init.headers as Record<string, string> | undefined),
    };
    if (this.token) headers['authorization'] = `Bearer ${this.token}`;
    const res = await this.fetchImpl(`${this.baseUrl}/v1${path}`, {
      ...init,
      headers,
    });
    if (!res.ok) {
      let body: ApiErrorBody;
      try {
        body = (await res.json()) as ApiErrorBody;
      } catch {
        body = { code: 'http-error', message: res.statusText, field: null };
      }
      throw new ApiError(res.status, body);
    }
    return (await res.json()) as T;
  }

  getBoundaries(target: number): Promise<Boundaries> {
    return this.request<Boundaries>(`/designs/boundaries?target=${target}`);
  }

  getDefaultTable(): Promise<{ rows: RdsRow[] }> {
    return this.request<{ rows: RdsRow[] }>('/designs/boin12/table');
  }

  async getDefaultTableCsv(): Promise<string> {
    const headers: Record<string, string> = {};
    if (this.token) headers['authorization'] = `Bearer ${this.token}`;
    const res = await this.fetchImpl(
      `${this.baseUrl}/v1/designs/boin12/table?fmt=csv`, { headers });
    if (!res.ok) throw new ApiError(res.status, {
      code: 'http-error', message: res.statusText, field: null });
    return res.text();
  }

  generateTable(config: Record<string, unknown>): Promise<{ rows: RdsRow[] }> {
    return this.request<{ rows: RdsRow[] }>('/designs/boin12/table', {
      method: 'POST',
      body: JSON.stringify({ config }),
    });
  }

  meritSearch(spec: Record<string, unknown>): Promise<MeritSolution> {
    return this.request<MeritSolution>('/designs/merit/search', {
      method: 'POST',
      body: JSON.stringify(spec),
    });
  }

  createTrial(config: Record<string, unknown>, id?: string): Promise<TrialView> {
    return this.request<TrialView>('/trials', {
      method: 'POST',
      body: JSON.stringify(id ? { id, config } : { config }),
    });
  }

  getTrial(id: string): Promise<TrialView> {
    return this.request<TrialView>(`/trials/${id}`);
  }

  postCohort(id: string, cohort: CohortSubmission):
      Promise<{ decision: Decision; trial: TrialView }> {
    return this.request(`/trials/${id}/cohorts`, {
      method: 'POST',
      body: JSON.stringify(cohort),
    });
  }

  closeTrial(id: string, force = false): Promise<Record<string, unknown>> {
    return this.request(`/trials/${id}/close`, {
      method: 'POST',
      body: JSON.stringify({ force }),
    });
  }

  submitSimulation(config: Record<string, unknown>): Promise<{ job_id: string }> {
    return this.request('/simulations', {
      method: 'POST',
      body: JSON.stringify(config),
    });
  }

  getSimulation(jobId: string): Promise<SimulationJob> {
    return this.request<SimulationJob>(`/simulations/${jobId}`);
  }

  /** Poll a simulation job until it leaves the running state. */
  async pollSimulation(
    jobId: string,
    intervalMs = 500,
    onUpdate?: (job: SimulationJob) => void,
  ): Promise<SimulationJob> {
    for (;;) {
      const job = await this.getSimulation(jobId);
      onUpdate?.(job);
      if (job.status !== 'running') return job;
      await new Promise((resolve) => setTimeout(resolve, intervalMs));
    }
  }
}
