/** Console entry point: three tabs over one session. */

import { ConsoleSession } from './session.js';
import { renderDesignSetup, renderMeritForm } from './designView.js';
import { renderCohortEntry } from './cohortView.js';
import { renderWhatIf } from './whatifView.js';
import { el, clear } from './dom.js';

export function mountConsole(root: HTMLElement, baseUrl: string,
                             token?: string): ConsoleSession {
  const session = new ConsoleSession(baseUrl, token);
  const nav = el('nav', {}, []);
  const view = el('main');
  root.append(nav, view);

  const tabs: Record<string, (mount: HTMLElement) => void> = {
    'design setup': (m) => {
      renderDesignSetup(m, session);
      renderMeritForm(m, session);
    },
    'cohort entry': (m) => renderCohortEntry(m, session),
    'what-if': (m) => renderWhatIf(m, session),
  };
  for (const [name, render] of Object.entries(tabs)) {
    const btn = el('button', { text: name, 'data-tab': name });
    btn.addEventListener('click', () => {
      clear(view);
      render(view);
    });
    nav.append(btn);
  }
  clear(view);
  tabs['design setup'](view);
  return session;
}
