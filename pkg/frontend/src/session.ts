/**
 * Console session: connection settings plus API-derived caches.
 *
 * No decision logic lives client-side; the session only remembers what the
 * server said.
 */

import { DoseoptApi, RdsRow, TrialView } from './api.js';

export class ConsoleSession {
  readonly api: DoseoptApi;
  activeTrialId: string | null = null;
  trial: TrialView | null = null;
  cachedTable: RdsRow[] | null = null;

  constructor(baseUrl: string, token?: string, fetchImpl?: typeof fetch) {
    this.api = new DoseoptApi(baseUrl, token, fetchImpl);
  }

  async openTrial(id: string): Promise<TrialView> {
    this.trial = await this.api.getTrial(id);
    this.activeTrialId = id;
    return this.trial;
  }

  async refreshTrial(): Promise<TrialView | null> {
    if (!this.activeTrialId) return null;
    this.trial = await this.api.getTrial(this.activeTrialId);
    return this.trial;
  }

  async designTable(): Promise<RdsRow[]> {
    if (!this.cachedTable) {
      this.cachedTable = (await this.api.getDefaultTable()).rows;
    }
    return this.cachedTable;
  }
}
